"""Round report model."""

from __future__ import annotations

from datetime import datetime

from pydantic import BaseModel, Field

from newsdesk_mcp.models.alert import AlertDecision
from newsdesk_mcp.models.cluster import BreakingNewsFlag
from newsdesk_mcp.models.link import LinkEdge


class LanguageCounts(BaseModel):
    articles: int = 0
    clusters: int = 0


class RoundReport(BaseModel):
    round_at: datetime
    ingested: int = 0
    languages: dict[str, LanguageCounts] = Field(default_factory=dict)
    breaking: list[BreakingNewsFlag] = Field(default_factory=list)
    links: list[LinkEdge] = Field(default_factory=list)
    alerts: list[AlertDecision] = Field(default_factory=list)
    source_errors: list[str] = Field(default_factory=list)
    duration_seconds: float = Field(default=0.0, description="wall clock, never persisted")
