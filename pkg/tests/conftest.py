"""Shared test fixtures."""

from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path

import pytest

from newsdesk_mcp.core.pipeline import Monitor, Resources
from newsdesk_mcp.models.article import Article, SourceDescriptor
from newsdesk_mcp.models.config import MonitorConfig

FIXTURES_DIR = Path(__file__).parent / "fixtures"

# Shipped fixture feeds cover 2024-03-04 06:05 to 08:15 UTC.
FEED_DAY = datetime(2024, 3, 4, tzinfo=timezone.utc)
ROUND_AT = datetime(2024, 3, 4, 9, 0, tzinfo=timezone.utc)


def utc(*args) -> datetime:
    return datetime(*args, tzinfo=timezone.utc)


@pytest.fixture
def config() -> MonitorConfig:
    return MonitorConfig()


@pytest.fixture(scope="session")
def shipped_resources() -> Resources:
    """Categories, gazetteer and name tables shipped with the package."""
    return Resources.load(MonitorConfig())


@pytest.fixture
def make_article():
    """Factory for articles with sensible defaults."""

    def _make(
        article_id: str = "a1",
        title: str = "",
        body: str = "",
        language: str = "en",
        source_id: str = "src",
        published_at: datetime | None = None,
        url: str = "",
    ) -> Article:
        return Article(
            article_id=article_id,
            source_id=source_id,
            language=language,
            published_at=published_at or utc(2024, 3, 4, 6, 0),
            title=title,
            body=body,
            url=url,
        )

    return _make


@pytest.fixture
def file_source():
    """Factory for a file-backed source descriptor."""

    def _make(path: Path, source_id: str = "test", language: str = "en", country: str = "GB") -> SourceDescriptor:
        return SourceDescriptor(source_id=source_id, url_or_path=str(path), language=language, country=country)

    return _make


@pytest.fixture
def monitor(tmp_path) -> Monitor:
    """Monitor over the shipped bilingual fixture feeds with a fresh state directory."""
    return Monitor(state_dir=tmp_path / "state")


@pytest.fixture
def three_items_feed() -> Path:
    return FIXTURES_DIR / "feeds" / "three_items.xml"
