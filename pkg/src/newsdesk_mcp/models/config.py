"""Validated configuration of the monitor."""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class IngestSettings(_Section):
    sources_file: str | None = Field(default=None, description="None = shipped fixture sources")
    timeout_seconds: float = Field(default=10.0, gt=0)
    max_workers: int = Field(default=8, ge=1)


class ClusterSettings(_Section):
    threshold: float = Field(default=0.5, gt=0, le=1)
    window_hours: float = Field(default=4.0, gt=0)
    window_min_articles: int = Field(default=20, ge=1)
    cadence_minutes: int = Field(default=10, ge=1)
    chain_overlap: float = Field(default=0.10, gt=0, le=1)


class BreakingSettings(_Section):
    min_size: int = Field(default=10, ge=1)
    min_sources: int = Field(default=5, ge=1)
    rise_ratio: float = Field(default=4.0, gt=0)
    recent_minutes: int = Field(default=30, ge=1)
    baseline_hours: float = Field(default=4.0, gt=0)


class CategorySettings(_Section):
    directory: str | None = None


class GeoSettings(_Section):
    gazetteer: str | None = None
    geostop_dir: str | None = None
    country_score: float = 3.0
    distance_score: float = 2.0
    size_scores: dict[str, float] = Field(
        default_factory=lambda: {
            "country": 3.0,
            "region": 2.0,
            "capital": 3.0,
            "major_city": 2.0,
            "city": 1.0,
            "town": 0.0,
        }
    )
    hierarchy_credit: float = Field(default=0.5, ge=0, le=1)


class NameSettings(_Section):
    directory: str | None = None
    merge_threshold: float = Field(default=0.85, ge=0, le=1)
    surface_weight: float = Field(default=0.5, ge=0, le=1)
    normalized_weight: float = Field(default=0.5, ge=0, le=1)


class QuoteSettings(_Section):
    marks: list[tuple[str, str]] = Field(
        default_factory=lambda: [
            ("«", "»"),
            ("‹", "›"),
            ('"', '"'),
            ("“", "”"),
            ("'", "'"),
            ("‘", "’"),
            ("„", "“"),
            ("„", "”"),
            ("<<", ">>"),
        ]
    )
    max_insert: int = Field(default=60, ge=0)


class SubjectSettings(_Section):
    enabled: bool = True
    top_k: int = Field(default=6, ge=1)
    profile_size: int = Field(default=100, ge=1)
    classes_file: str | None = None
    corpus_dir: str | None = None


class LinkWeights(_Section):
    subject: float = Field(default=0.4, ge=0)
    country: float = Field(default=0.3, ge=0)
    entity: float = Field(default=0.2, ge=0)
    keyword: float = Field(default=0.1, ge=0)

    @model_validator(mode="after")
    def _check_sum(self) -> LinkWeights:
        total = math.fsum([self.subject, self.country, self.entity, self.keyword])
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"link weights must sum to 1, got {total}")
        return self


class LinkSettings(_Section):
    threshold: float = Field(default=0.5, ge=0, le=1)
    weights: LinkWeights = Field(default_factory=LinkWeights)


class AlertSettings(_Section):
    ratio: float = Field(default=2.0, gt=0)
    min_count: float = Field(default=5.0, ge=0)
    baseline_days: int = Field(default=14, ge=1)
    min_history_days: int = Field(default=7, ge=1)
    weekday_history_days: int = Field(default=56, ge=7)
    weekday_floor: float = Field(default=0.25, gt=0, le=1)
    weekday_normalization: bool = True
    level_buckets: list[float] = Field(default_factory=lambda: [2.0, 4.0, 8.0], min_length=1)

    @field_validator("level_buckets")
    @classmethod
    def _sorted(cls, value: list[float]) -> list[float]:
        if value != sorted(value):
            raise ValueError("level buckets must be ascending")
        return value


class PathSettings(_Section):
    state_dir: str = "state"
    models_dir: str | None = None


class MonitorConfig(_Section):
    ingest: IngestSettings = Field(default_factory=IngestSettings)
    cluster: ClusterSettings = Field(default_factory=ClusterSettings)
    breaking: BreakingSettings = Field(default_factory=BreakingSettings)
    categories: CategorySettings = Field(default_factory=CategorySettings)
    geo: GeoSettings = Field(default_factory=GeoSettings)
    names: NameSettings = Field(default_factory=NameSettings)
    quotes: QuoteSettings = Field(default_factory=QuoteSettings)
    subject: SubjectSettings = Field(default_factory=SubjectSettings)
    link: LinkSettings = Field(default_factory=LinkSettings)
    alerts: AlertSettings = Field(default_factory=AlertSettings)
    paths: PathSettings = Field(default_factory=PathSettings)
