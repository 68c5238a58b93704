"""Country-category alert models."""

from __future__ import annotations

from datetime import date, datetime

from pydantic import BaseModel, Field, field_validator

from newsdesk_mcp.models.article import ensure_utc


class DailyCount(BaseModel):
    day: date
    count: int = Field(default=0, ge=0)


class AlertState(BaseModel):
    """Running statistics of one (country, category) pair."""

    country: str
    category: str
    daily_counts: list[DailyCount] = Field(default_factory=list, description="completed days, oldest first")
    today: DailyCount | None = None
    recent: list[datetime] = Field(default_factory=list, description="article times of the last 24 hours")
    history: list[DailyCount] = Field(default_factory=list, description="completed days for weekday factors")
    weekday_factors: list[float] = Field(default_factory=lambda: [1.0] * 7, min_length=7, max_length=7)

    @field_validator("recent")
    @classmethod
    def _to_utc(cls, value: list[datetime]) -> list[datetime]:
        return [ensure_utc(v) for v in value]

    @field_validator("weekday_factors")
    @classmethod
    def _check_factors(cls, value: list[float]) -> list[float]:
        if any(f <= 0 for f in value):
            raise ValueError("weekday factors must be positive")
        return value

    @property
    def key(self) -> tuple[str, str]:
        return (self.country, self.category)


class AlertDecision(BaseModel):
    timestamp: datetime
    country: str
    category: str
    alert: bool = False
    level: float | None = None
    raw_count: int = 0
    adjusted: float = 0.0
    mean: float = 0.0
    warming_up: bool = False

    @field_validator("timestamp")
    @classmethod
    def _to_utc(cls, value: datetime) -> datetime:
        return ensure_utc(value)
