"""Name mention, entity and quotation models."""

from __future__ import annotations

from datetime import datetime
from enum import Enum

from pydantic import BaseModel, Field, field_validator

from newsdesk_mcp.models.article import ensure_utc

EntityVector = dict[int, int]


class EntityType(str, Enum):
    PERSON = "person"
    ORGANIZATION = "organization"


class NameMention(BaseModel):
    surface: str
    start: int = Field(ge=0, description="first token index")
    end: int = Field(ge=0, description="token index after the name")
    char_start: int = Field(ge=0)
    char_end: int = Field(ge=0)
    entity_type: EntityType = EntityType.PERSON
    titles: list[str] = Field(default_factory=list)
    known: bool = Field(default=False, description="matched an existing variant")


class Entity(BaseModel):
    """Language-neutral entity: every spelling shares the numeric id."""

    entity_id: int = Field(ge=1)
    entity_type: EntityType = EntityType.PERSON
    variants: list[str] = Field(..., min_length=1, description="first is the primary variant")
    canonical: str
    titles: dict[str, int] = Field(default_factory=dict)
    cluster_refs: list[str] = Field(default_factory=list)
    chain_refs: list[str] = Field(default_factory=list)

    @property
    def primary(self) -> str:
        return self.variants[0]


class QuoteRecord(BaseModel):
    """Reported speech attributed to a person entity."""

    entity_id: int
    speaker: str
    verb: str
    quote_text: str = Field(..., min_length=1)
    article_id: str
    language: str = ""
    published_at: datetime | None = None
    span_start: int = Field(ge=0, description="body offset of the speaker name")
    span_end: int = Field(ge=0, description="body offset after the closing mark")
    quote_start: int = Field(ge=0)
    quote_end: int = Field(ge=0)
    mentioned_entities: list[int] = Field(default_factory=list)

    @field_validator("published_at")
    @classmethod
    def _to_utc(cls, value: datetime | None) -> datetime | None:
        return ensure_utc(value) if value is not None else None


class CoOccurrence(BaseModel):
    entity_id: int
    count: int = 0
    weighted: float = 0.0


class EntityProfile(BaseModel):
    """Everything known about one entity, all languages together."""

    entity_id: int
    entity_type: EntityType
    canonical: str
    variants: list[str]
    titles: dict[str, int] = Field(default_factory=dict)
    clusters: dict[str, list[str]] = Field(default_factory=dict, description="language -> cluster ids")
    stories: list[str] = Field(default_factory=list)
    quotes: list[QuoteRecord] = Field(default_factory=list)
    cooccurring: list[CoOccurrence] = Field(default_factory=list)
