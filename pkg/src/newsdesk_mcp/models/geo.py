"""Gazetteer and geo mention models."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, Field, model_validator

CountryVector = dict[str, int]


class SizeClass(str, Enum):
    COUNTRY = "country"
    REGION = "region"
    CAPITAL = "capital"
    MAJOR_CITY = "major_city"
    CITY = "city"
    TOWN = "town"

    @property
    def rank(self) -> int:
        """Total order, larger is bigger."""
        return _SIZE_RANK[self]


_SIZE_RANK = {
    SizeClass.COUNTRY: 6,
    SizeClass.REGION: 5,
    SizeClass.CAPITAL: 4,
    SizeClass.MAJOR_CITY: 3,
    SizeClass.CITY: 2,
    SizeClass.TOWN: 1,
}


class GazetteerEntry(BaseModel):
    location_id: int
    names: dict[str, list[str]] = Field(default_factory=dict, description='language -> names, "*" for all')
    latitude: float = Field(ge=-90, le=90)
    longitude: float = Field(ge=-180, le=180)
    size_class: SizeClass
    country: str
    parent_id: int | None = None

    @model_validator(mode="after")
    def _check_parent(self) -> GazetteerEntry:
        if self.parent_id == self.location_id:
            raise ValueError(f"Location {self.location_id} is its own parent")
        return self


class GeoMention(BaseModel):
    surface: str
    token_offset: int = Field(ge=0)
    token_end: int = Field(ge=0)
    candidates: list[int] = Field(..., min_length=1)
    resolved: int | None = None

    @model_validator(mode="after")
    def _check_resolved(self) -> GeoMention:
        if self.resolved is not None and self.resolved not in self.candidates:
            raise ValueError(f"Resolved id {self.resolved} not among candidates")
        return self

    @property
    def is_ambiguous(self) -> bool:
        return len(self.candidates) > 1
