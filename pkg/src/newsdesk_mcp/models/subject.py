"""Subject thesaurus and classification models."""

from __future__ import annotations

from pydantic import BaseModel, Field

SubjectVector = dict[int, float]


class SubjectClass(BaseModel):
    code: int
    labels: dict[str, str] = Field(default_factory=dict, description="language -> label")


class LabeledDocument(BaseModel):
    text: str
    language: str
    codes: list[int] = Field(..., min_length=1)
    name: str = ""


class SubjectProfile(BaseModel):
    code: int
    language: str
    terms: dict[str, float] = Field(default_factory=dict, description="ranked, weight descending")
