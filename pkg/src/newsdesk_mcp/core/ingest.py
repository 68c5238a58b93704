"""Feed acquisition, Unicode normalization and the article store."""

from __future__ import annotations

import calendar
import hashlib
import logging
import re
import threading
import unicodedata
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

import feedparser
import requests
from bs4 import BeautifulSoup
from pydantic import ValidationError

from newsdesk_mcp.core.resources import known_languages, read_tsv
from newsdesk_mcp.errors import (
    ArticleRejectedError,
    FeedParseError,
    ResourceError,
    SourceUnreachableError,
)
from newsdesk_mcp.models.article import (
    Article,
    FetchResult,
    ItemDiagnostic,
    RawFeedItem,
    SourceDescriptor,
    SourceError,
    ensure_utc,
)

logger = logging.getLogger(__name__)

_SPACE = re.compile(r"\s+")
USER_AGENT = "newsdesk/1.0 (+feed reader)"


# ── Sources ───────────────────────────────────────────────────────

def load_sources(path: str | Path) -> list[SourceDescriptor]:
    """Read ``sources.tsv``: source_id, locator, language, country, interval.

    Relative file locators are resolved against the directory of the table.
    """
    path = Path(path)
    sources = []
    for number, (source_id, locator, language, country, interval) in enumerate(read_tsv(path, 5), start=1):
        if not locator.startswith(("http://", "https://")) and not Path(locator).is_absolute():
            locator = str(path.parent / locator)
        try:
            sources.append(
                SourceDescriptor(
                    source_id=source_id,
                    url_or_path=locator,
                    language=language,
                    country=country,
                    poll_interval=int(interval),
                )
            )
        except (ValidationError, ValueError) as e:
            raise ResourceError(f"{path}: row {number} ({source_id}): {e}") from e
    ids = [s.source_id for s in sources]
    if len(set(ids)) != len(ids):
        raise ResourceError(f"{path}: duplicate source ids")
    return sources


# ── Fetching ──────────────────────────────────────────────────────

def read_document(source: SourceDescriptor, timeout: float = 10.0) -> bytes:
    """Raw bytes of a source's feed document."""
    if source.is_remote:
        try:
            response = requests.get(source.url_or_path, timeout=timeout, headers={"User-Agent": USER_AGENT})
            response.raise_for_status()
        except requests.RequestException as e:
            raise SourceUnreachableError(f"{source.source_id}: {e}") from e
        return response.content
    try:
        return Path(source.url_or_path).read_bytes()
    except OSError as e:
        raise SourceUnreachableError(f"{source.source_id}: {e}") from e


def _entry_time(entry) -> datetime | None:
    parsed = entry.get("published_parsed") or entry.get("updated_parsed")
    if not parsed:
        return None
    return datetime.fromtimestamp(calendar.timegm(parsed), tz=timezone.utc)


def _entry_body(entry) -> str:
    if entry.get("summary"):
        return entry["summary"]
    content = entry.get("content") or []
    if content:
        return content[0].get("value", "")
    return ""


def parse_feed(
    document: bytes,
    source: SourceDescriptor,
    since: datetime | None = None,
    until: datetime | None = None,
) -> tuple[list[RawFeedItem], list[ItemDiagnostic]]:
    """Items of one RSS/Atom document published after ``since`` and not after ``until``."""
    feed = feedparser.parse(document)
    if feed.bozo and not feed.entries:
        raise FeedParseError(f"{source.source_id}: {feed.get('bozo_exception')}")
    if feed.bozo:
        logger.warning(f"Feed parsing issues for {source.source_id}: {feed.get('bozo_exception')}")

    items: list[RawFeedItem] = []
    skipped: list[ItemDiagnostic] = []
    for position, entry in enumerate(feed.entries):
        published = _entry_time(entry)
        if published is None:
            skipped.append(ItemDiagnostic(source_id=source.source_id, position=position, message="no publication date"))
            logger.warning(f"Skipping item {position} of {source.source_id}: no publication date")
            continue
        if since is not None and published <= since:
            continue
        if until is not None and published > until:
            continue
        language = (entry.get("language") or "").strip().lower() or None
        if language is not None and language not in known_languages():
            language = None
        items.append(
            RawFeedItem(
                source_id=source.source_id,
                title=entry.get("title", ""),
                body=_entry_body(entry),
                url=entry.get("link", ""),
                published_at=published,
                language=language,
            )
        )
    return items, skipped


def _fetch_one(
    source: SourceDescriptor, since: datetime | None, until: datetime | None, timeout: float
) -> tuple[list[RawFeedItem], list[ItemDiagnostic], SourceError | None]:
    try:
        document = read_document(source, timeout)
        items, skipped = parse_feed(document, source, since, until)
    except (SourceUnreachableError, FeedParseError) as e:
        logger.warning(f"Source {source.source_id} failed: {e}")
        return [], [], SourceError(source_id=source.source_id, locator=source.url_or_path, message=str(e))
    return items, skipped, None


def fetch_feeds(
    sources: Sequence[SourceDescriptor],
    since: datetime | None = None,
    until: datetime | None = None,
    timeout: float = 10.0,
    max_workers: int = 8,
) -> FetchResult:
    """Read every source concurrently; items come back in source order.

    ``since`` is exclusive and ``until`` inclusive. A failing source is
    recorded in ``errors`` and does not affect the others.
    """
    since = ensure_utc(since) if since is not None else None
    until = ensure_utc(until) if until is not None else None
    result = FetchResult()
    if not sources:
        return result
    with ThreadPoolExecutor(max_workers=max(1, min(max_workers, len(sources)))) as executor:
        outcomes = list(executor.map(lambda s: _fetch_one(s, since, until, timeout), sources))
    for items, skipped, error in outcomes:
        result.items.extend(items)
        result.skipped.extend(skipped)
        if error is not None:
            result.errors.append(error)
    logger.info(f"Fetched {len(result.items)} items from {len(sources)} sources ({len(result.errors)} failed)")
    return result


# ── Normalization ─────────────────────────────────────────────────

def clean_text(text: str, html: bool = False) -> str:
    """NFC text without markup and control characters, whitespace collapsed."""
    if html and "<" in text:
        text = BeautifulSoup(text, "html.parser").get_text(" ")
    text = unicodedata.normalize("NFC", text)
    text = "".join(" " if unicodedata.category(c) == "Cc" else c for c in text)
    return _SPACE.sub(" ", text).strip()


def make_article_id(source_id: str, url: str, title: str) -> str:
    key = "\x1f".join((source_id, url, unicodedata.normalize("NFC", title)))
    return hashlib.sha256(key.encode("utf-8")).hexdigest()[:32]


def normalize_article(raw: RawFeedItem | Article, source: SourceDescriptor) -> Article:
    """Turn a raw item into an article; already normalized articles pass unchanged."""
    html = not isinstance(raw, Article)
    title = clean_text(raw.title, html=html)
    body = clean_text(raw.body, html=html)
    if not title and not body:
        raise ArticleRejectedError(f"{raw.source_id}: item without title and body ({raw.url or 'no url'})")
    url = raw.url.strip()
    article = Article(
        article_id=make_article_id(raw.source_id, url, title),
        source_id=raw.source_id,
        language=raw.language or source.language,
        published_at=raw.published_at,
        title=title,
        body=body,
        url=url,
    )
    if isinstance(raw, Article):
        article.annotations = raw.annotations.model_copy(deep=True)
    return article


def normalize_items(
    items: Iterable[RawFeedItem], sources: Sequence[SourceDescriptor]
) -> tuple[list[Article], list[ItemDiagnostic]]:
    """Normalize items, turning rejects into diagnostics."""
    by_id = {s.source_id: s for s in sources}
    articles: list[Article] = []
    rejected: list[ItemDiagnostic] = []
    for position, item in enumerate(items):
        try:
            articles.append(normalize_article(item, by_id[item.source_id]))
        except ArticleRejectedError as e:
            logger.warning(str(e))
            rejected.append(ItemDiagnostic(source_id=item.source_id, position=position, message=str(e)))
    return articles, rejected


# ── Store ─────────────────────────────────────────────────────────

class ArticleStore:
    """Articles by id; inserts are thread-safe and the last write wins."""

    def __init__(self, articles: Iterable[Article] = ()) -> None:
        self._articles: dict[str, Article] = {}
        self._lock = threading.Lock()
        for article in articles:
            self.add(article)

    def add(self, article: Article) -> bool:
        """Store an article; True when its id was not stored before."""
        with self._lock:
            new = article.article_id not in self._articles
            self._articles[article.article_id] = article
        return new

    def get(self, article_id: str) -> Article | None:
        return self._articles.get(article_id)

    def __getitem__(self, article_id: str) -> Article:
        return self._articles[article_id]

    def __contains__(self, article_id: object) -> bool:
        return article_id in self._articles

    def __len__(self) -> int:
        return len(self._articles)

    def sorted(self) -> list[Article]:
        """Articles by publication time, then id."""
        return sorted(self._articles.values(), key=lambda a: (a.published_at, a.article_id))

    def by_language(self, language: str) -> list[Article]:
        return [a for a in self.sorted() if a.language == language]

    def languages(self) -> list[str]:
        return sorted({a.language for a in self._articles.values()})

    def as_dict(self) -> dict[str, Article]:
        return dict(self._articles)
