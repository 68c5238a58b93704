"""Cluster signature and cross-lingual link models."""

from __future__ import annotations

from pydantic import BaseModel, Field

from newsdesk_mcp.models.cluster import KeywordVector
from newsdesk_mcp.models.entity import EntityVector
from newsdesk_mcp.models.geo import CountryVector
from newsdesk_mcp.models.subject import SubjectVector


class ClusterSignature(BaseModel):
    """The four language-neutral ingredients of one cluster."""

    cluster_id: str
    language: str
    subject: SubjectVector = Field(default_factory=dict)
    country: CountryVector = Field(default_factory=dict)
    entity: EntityVector = Field(default_factory=dict)
    keyword: KeywordVector = Field(default_factory=dict)


class LinkParts(BaseModel):
    subject: float = Field(ge=0, le=1)
    country: float = Field(ge=0, le=1)
    entity: float = Field(ge=0, le=1)
    keyword: float = Field(ge=0, le=1)


class LinkEdge(BaseModel):
    date: str = ""
    cluster_a: str
    language_a: str
    cluster_b: str
    language_b: str
    combined: float
    parts: LinkParts


class LinkResult(BaseModel):
    edges: list[LinkEdge] = Field(default_factory=list)
    pairs_examined: int = 0
