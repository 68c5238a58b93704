"""Category definition AST and match result models."""

from __future__ import annotations

import math
from enum import Enum
from typing import Annotated, Literal, Union

from pydantic import BaseModel, Field, field_validator, model_validator


class DefinitionMode(str, Enum):
    BOOLEAN = "boolean"
    WEIGHTED = "weighted"


class Term(BaseModel):
    """A search word or phrase with ``_``/``%`` wildcards."""

    pattern: str = Field(..., min_length=1)
    weight: float = Field(default=0.0, description="weighted mode only")

    @field_validator("pattern")
    @classmethod
    def _check_pattern(cls, value: str) -> str:
        value = " ".join(value.split())
        if not value:
            raise ValueError("Term pattern is empty")
        if "%%" in value:
            raise ValueError(f"Adjacent wildcards '%%' in term {value!r}")
        return value

    @property
    def words(self) -> list[str]:
        return self.pattern.split(" ")


class TermNode(BaseModel):
    type: Literal["term"] = "term"
    term: Term


class NotNode(BaseModel):
    type: Literal["not"] = "not"
    child: "Expression"


class AndNode(BaseModel):
    type: Literal["and"] = "and"
    children: list["Expression"] = Field(..., min_length=2)


class OrNode(BaseModel):
    type: Literal["or"] = "or"
    children: list["Expression"] = Field(..., min_length=2)


class NearNode(BaseModel):
    """Unordered vicinity: both terms within ``k`` tokens of each other."""

    type: Literal["near"] = "near"
    k: int = Field(..., ge=1)
    left: Term
    right: Term


Expression = Annotated[
    Union[TermNode, NotNode, AndNode, OrNode, NearNode],
    Field(discriminator="type"),
]

NotNode.model_rebuild()
AndNode.model_rebuild()
OrNode.model_rebuild()


class CategoryDefinition(BaseModel):
    """One category, valid for every language at once."""

    category_id: str = Field(..., min_length=1)
    label: str = ""
    mode: DefinitionMode = DefinitionMode.BOOLEAN
    country: str | None = Field(default=None, description="set for country categories")
    expression: Expression | None = None
    terms: list[Term] = Field(default_factory=list)
    threshold: float | None = None

    @model_validator(mode="after")
    def _check_mode(self) -> CategoryDefinition:
        if self.mode == DefinitionMode.BOOLEAN:
            if self.expression is None:
                raise ValueError(f"Boolean category {self.category_id} has no expression")
        else:
            if not self.terms:
                raise ValueError(f"Weighted category {self.category_id} has no terms")
            if self.threshold is None or not math.isfinite(self.threshold):
                raise ValueError(f"Weighted category {self.category_id} needs a finite threshold")
        return self

    def all_terms(self) -> list[Term]:
        """Every term of the definition, in source order."""
        if self.mode == DefinitionMode.WEIGHTED:
            return list(self.terms)
        found: list[Term] = []
        _collect_terms(self.expression, found)
        return found


def _collect_terms(node, found: list[Term]) -> None:
    if isinstance(node, TermNode):
        found.append(node.term)
    elif isinstance(node, NearNode):
        found.extend([node.left, node.right])
    elif isinstance(node, NotNode):
        _collect_terms(node.child, found)
    elif isinstance(node, (AndNode, OrNode)):
        for child in node.children:
            _collect_terms(child, found)


class TermHit(BaseModel):
    term: str
    offset: int = Field(ge=0, description="token offset of the first word")


class MatchResult(BaseModel):
    matched: bool = False
    matched_terms: list[TermHit] = Field(default_factory=list)
    score: float = 0.0
