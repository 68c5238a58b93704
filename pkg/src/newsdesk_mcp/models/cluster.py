"""Cluster, story chain and breaking-news models."""

from __future__ import annotations

from datetime import datetime
from enum import Enum

from pydantic import BaseModel, Field, field_validator

from newsdesk_mcp.models.article import ensure_utc

KeywordVector = dict[str, float]


class SizePoint(BaseModel):
    """Size of a story at one round."""

    timestamp: datetime
    size: int = Field(ge=0)

    @field_validator("timestamp")
    @classmethod
    def _to_utc(cls, value: datetime) -> datetime:
        return ensure_utc(value)


class Cluster(BaseModel):
    """Same-language articles grouped in one round."""

    cluster_id: str
    language: str
    members: list[str] = Field(..., min_length=1, description="article ids, sorted")
    window_size: int = Field(default=0, ge=0, description="members inside the round window")
    centroid: KeywordVector = Field(default_factory=dict)
    medoid_article_id: str
    medoid_title: str = ""
    round_at: datetime
    chain_id: str | None = None
    is_new: bool = True
    source_ids: list[str] = Field(default_factory=list)
    size_history: list[SizePoint] = Field(default_factory=list)

    @field_validator("round_at")
    @classmethod
    def _to_utc(cls, value: datetime) -> datetime:
        return ensure_utc(value)

    @property
    def size(self) -> int:
        return len(self.members)


class BreakingReason(str, Enum):
    NEW_LARGE = "new-large"
    RAPID_RISE = "rapid-rise"


class BreakingNewsFlag(BaseModel):
    cluster_id: str
    chain_id: str | None = None
    language: str = ""
    reason: BreakingReason
    articles_30min: int = Field(ge=0)
    distinct_sources: int = Field(ge=0)
    round_at: datetime | None = None


class ChainRecord(BaseModel):
    """A story: the clusters that inherited one chain id over rounds."""

    chain_id: str
    language: str
    first_seen: datetime
    last_seen: datetime
    cluster_ids: list[str] = Field(default_factory=list)
    title: str = ""
    size_history: list[SizePoint] = Field(default_factory=list)
    entity_ids: list[int] = Field(default_factory=list, description="entities of the latest cluster")

    @field_validator("first_seen", "last_seen")
    @classmethod
    def _to_utc(cls, value: datetime) -> datetime:
        return ensure_utc(value)


class TimelinePoint(BaseModel):
    day: str = Field(..., description="ISO date")
    size: int


class ClusterFacets(BaseModel):
    """Share of member articles per category and per country category."""

    categories: dict[str, float] = Field(default_factory=dict)
    countries: dict[str, float] = Field(default_factory=dict)


class ClusterSummary(BaseModel):
    """One line of the top-stories listing."""

    rank: int = Field(ge=1)
    cluster_id: str
    chain_id: str | None = None
    language: str
    title: str
    url: str = ""
    published_at: datetime
    size: int
    source_count: int
    is_new: bool = True
    major_location: int | None = None
    facets: ClusterFacets = Field(default_factory=ClusterFacets)

    @field_validator("published_at")
    @classmethod
    def _to_utc(cls, value: datetime) -> datetime:
        return ensure_utc(value)


class RoundSnapshot(BaseModel):
    """Clusters of the latest round of one language and of the round before it."""

    language: str
    round_at: datetime
    clusters: list[Cluster] = Field(default_factory=list)
    summaries: list[ClusterSummary] = Field(default_factory=list)
    previous_round_at: datetime | None = None
    previous_clusters: list[Cluster] = Field(default_factory=list)
