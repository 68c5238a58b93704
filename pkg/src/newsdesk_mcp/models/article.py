"""Feed source, raw item and article models."""

from __future__ import annotations

from datetime import datetime, timezone

from pydantic import BaseModel, Field, field_validator


def ensure_utc(value: datetime) -> datetime:
    """Attach UTC to naive datetimes and convert aware ones to UTC."""
    if value.tzinfo is None:
        return value.replace(tzinfo=timezone.utc)
    return value.astimezone(timezone.utc)


class SourceDescriptor(BaseModel):
    """One news source as listed in ``sources.tsv``."""

    source_id: str = Field(..., min_length=1)
    url_or_path: str = Field(..., min_length=1, description="HTTP(S) URL or file path")
    language: str = Field(..., description="ISO-639-1 code")
    country: str = Field(..., description="ISO-3166 alpha-2 code")
    poll_interval: int = Field(default=300, ge=1, description="seconds")

    @field_validator("language")
    @classmethod
    def _check_language(cls, value: str) -> str:
        from newsdesk_mcp.core.resources import known_languages

        value = value.strip().lower()
        if value not in known_languages():
            raise ValueError(f"Unknown language code: {value!r}")
        return value

    @field_validator("country")
    @classmethod
    def _check_country(cls, value: str) -> str:
        from newsdesk_mcp.core.resources import known_countries

        value = value.strip().upper()
        if value not in known_countries():
            raise ValueError(f"Unknown country code: {value!r}")
        return value

    @property
    def is_remote(self) -> bool:
        return self.url_or_path.startswith(("http://", "https://"))


class RawFeedItem(BaseModel):
    """An item as read from an RSS/Atom document, before normalization."""

    source_id: str
    title: str = ""
    body: str = ""
    url: str = ""
    published_at: datetime
    language: str | None = Field(default=None, description="Override of the source language")

    @field_validator("published_at")
    @classmethod
    def _to_utc(cls, value: datetime) -> datetime:
        return ensure_utc(value)


class SourceError(BaseModel):
    """Per-source failure record of a fetch."""

    source_id: str
    locator: str
    message: str


class ItemDiagnostic(BaseModel):
    """A skipped item and the reason it was skipped."""

    source_id: str
    position: int
    message: str


class FetchResult(BaseModel):
    """Items of all readable sources plus per-source errors."""

    items: list[RawFeedItem] = Field(default_factory=list)
    errors: list[SourceError] = Field(default_factory=list)
    skipped: list[ItemDiagnostic] = Field(default_factory=list)


class TaggedName(BaseModel):
    """A recognized name resolved to an entity."""

    surface: str
    start: int = Field(ge=0, description="first token index")
    end: int = Field(ge=0, description="token index after the name")
    char_start: int = Field(ge=0)
    char_end: int = Field(ge=0)
    entity_id: int
    entity_type: str
    titles: list[str] = Field(default_factory=list)


class ResolvedPlace(BaseModel):
    """A geo mention after disambiguation."""

    surface: str
    token_offset: int
    location_id: int
    country: str


class ArticleAnnotations(BaseModel):
    """Everything the pipeline stages add to an article."""

    categories: list[str] = Field(default_factory=list)
    countries: list[str] = Field(default_factory=list, description="from country categories")
    names: list[TaggedName] = Field(default_factory=list)
    places: list[ResolvedPlace] = Field(default_factory=list)
    quote_count: int = 0


class Article(BaseModel):
    """One normalized news item."""

    article_id: str
    source_id: str
    language: str
    published_at: datetime
    title: str = ""
    body: str = ""
    url: str = ""
    annotations: ArticleAnnotations = Field(default_factory=ArticleAnnotations)

    @field_validator("published_at")
    @classmethod
    def _to_utc(cls, value: datetime) -> datetime:
        return ensure_utc(value)

    @property
    def text(self) -> str:
        """Title and body as one text, title first."""
        if self.title and self.body:
            return f"{self.title}\n{self.body}"
        return self.title or self.body


class ChannelInfo(BaseModel):
    """RSS channel metadata."""

    title: str = "newsdesk"
    link: str = "http://localhost/"
    description: str = ""
    language: str | None = None
