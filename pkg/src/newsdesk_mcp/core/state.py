"""Persistent stores under a state directory and the artifacts derived from them.

Layout (see ``docs/state.md``)::

    articles.jsonl  entities.jsonl  chains.jsonl  rounds.jsonl
    quotes.jsonl    breaking.jsonl  profiles.tsv
    alerts/state.jsonl  alerts/log.jsonl  links/<date>.jsonl
    out/clusters/<lang>.rss  out/clusters/<lang>.json  out/alerts.rss
    outbox/*.eml
"""

from __future__ import annotations

import json
import logging
import shutil
from dataclasses import dataclass, field
from email.message import EmailMessage
from email.utils import format_datetime
from pathlib import Path

from newsdesk_mcp.core.alerts import AlertKey
from newsdesk_mcp.core.ingest import ArticleStore
from newsdesk_mcp.core.names.store import EntityStore
from newsdesk_mcp.core.subject import ProfileKey, profiles_from_rows, profiles_to_rows
from newsdesk_mcp.errors import StateLoadError
from newsdesk_mcp.formats import FeedEntry, emit_rss, feed_entry, read_jsonl, write_jsonl, write_text
from newsdesk_mcp.models.alert import AlertDecision, AlertState
from newsdesk_mcp.models.article import Article, ChannelInfo
from newsdesk_mcp.models.cluster import BreakingNewsFlag, ChainRecord, RoundSnapshot
from newsdesk_mcp.models.entity import Entity, QuoteRecord
from newsdesk_mcp.models.link import LinkEdge
from newsdesk_mcp.models.subject import SubjectProfile

logger = logging.getLogger(__name__)

CHANNEL_LINK = "http://localhost:8000/"


@dataclass
class MonitorState:
    """Every store the rounds read and write."""

    articles: ArticleStore = field(default_factory=ArticleStore)
    entities: EntityStore = field(default_factory=EntityStore)
    chains: dict[str, ChainRecord] = field(default_factory=dict)
    rounds: dict[str, RoundSnapshot] = field(default_factory=dict)
    quotes: list[QuoteRecord] = field(default_factory=list)
    breaking: list[BreakingNewsFlag] = field(default_factory=list)
    alert_states: dict[AlertKey, AlertState] = field(default_factory=dict)
    alert_log: list[AlertDecision] = field(default_factory=list)
    links: dict[str, list[LinkEdge]] = field(default_factory=dict)
    profiles: dict[ProfileKey, SubjectProfile] | None = None

    @property
    def is_empty(self) -> bool:
        return len(self.articles) == 0 and len(self.entities) == 0 and not self.rounds

    def cluster_languages(self) -> dict[str, str]:
        """Language of every cluster id any chain has seen."""
        return {cid: chain.language for chain in self.chains.values() for cid in chain.cluster_ids}


# ── Save ──────────────────────────────────────────────────────────

def _write_profiles(path: Path, profiles: dict[ProfileKey, SubjectProfile]) -> None:
    lines = [f"{code}\t{language}\t{token}\t{weight!r}\n" for code, language, token, weight in profiles_to_rows(profiles)]
    write_text(path, "".join(lines))


def _write_stores(state: MonitorState, root: Path) -> None:
    write_jsonl(root / "articles.jsonl", state.articles.sorted())
    write_jsonl(root / "entities.jsonl", state.entities.sorted())
    write_jsonl(root / "chains.jsonl", (state.chains[k] for k in sorted(state.chains)))
    write_jsonl(root / "rounds.jsonl", (state.rounds[k] for k in sorted(state.rounds)))
    write_jsonl(root / "quotes.jsonl", state.quotes)
    write_jsonl(root / "breaking.jsonl", state.breaking)
    write_jsonl(root / "alerts" / "state.jsonl", (state.alert_states[k] for k in sorted(state.alert_states)))
    write_jsonl(root / "alerts" / "log.jsonl", state.alert_log)
    (root / "links").mkdir(parents=True, exist_ok=True)
    for day in sorted(state.links):
        write_jsonl(root / "links" / f"{day}.jsonl", state.links[day])
    if state.profiles is not None:
        _write_profiles(root / "profiles.tsv", state.profiles)


def persist_state(state: MonitorState, directory: str | Path) -> None:
    """Write all stores and artifacts into a fresh directory, then swap it in."""
    directory = Path(directory)
    tmp = directory.with_name(f".{directory.name}.tmp")
    old = directory.with_name(f".{directory.name}.old")
    for stale in (tmp, old):
        if stale.exists():
            shutil.rmtree(stale)
    try:
        tmp.mkdir(parents=True)
        _write_stores(state, tmp)
        render_artifacts(state, tmp)
    except Exception:
        shutil.rmtree(tmp, ignore_errors=True)
        raise
    if directory.exists():
        directory.rename(old)
    tmp.rename(directory)
    shutil.rmtree(old, ignore_errors=True)
    logger.info(f"State saved to {directory} ({len(state.articles)} articles, {len(state.entities)} entities)")


# ── Artifacts ─────────────────────────────────────────────────────

def clusters_rss(snapshot: RoundSnapshot) -> bytes:
    channel = ChannelInfo(
        title=f"newsdesk top stories ({snapshot.language})",
        link=f"{CHANNEL_LINK}clusters/{snapshot.language}.rss",
        description=f"Clusters of the round at {snapshot.round_at.isoformat()}",
        language=snapshot.language,
    )
    return emit_rss(snapshot.summaries, channel)


def clusters_json(snapshot: RoundSnapshot) -> str:
    document = {
        "language": snapshot.language,
        "round_at": snapshot.round_at.isoformat(),
        "clusters": [s.model_dump(mode="json") for s in snapshot.summaries],
    }
    return json.dumps(document, ensure_ascii=False, indent=2) + "\n"


def _breaking_entry(flag: BreakingNewsFlag) -> FeedEntry:
    title = f"Breaking ({flag.reason.value}): {flag.language} story {flag.chain_id or flag.cluster_id}"
    description = f"{flag.articles_30min} articles in 30 minutes from {flag.distinct_sources} sources"
    return FeedEntry(f"breaking-{flag.cluster_id}", title, "", flag.round_at, description, "breaking")


def alerts_rss(state: MonitorState) -> bytes:
    entries = [*state.alert_log, *(_breaking_entry(f) for f in state.breaking if f.round_at is not None)]
    channel = ChannelInfo(title="newsdesk alerts", link=f"{CHANNEL_LINK}alerts", description="Alerts and breaking news")
    return emit_rss(entries, channel)


def mock_email(entry: FeedEntry) -> bytes:
    """An alert as an e-mail message; nothing is sent."""
    message = EmailMessage()
    message["From"] = "newsdesk@localhost"
    message["To"] = "subscribers@localhost"
    message["Subject"] = entry.title
    message["Date"] = format_datetime(entry.published_at, usegmt=True)
    message["Message-ID"] = f"<{entry.guid}@newsdesk.localhost>"
    message.set_content(entry.description)
    return message.as_bytes()


def render_artifacts(state: MonitorState, root: str | Path) -> None:
    """Cluster documents, the alert feed and the outbox, all derived from the stores."""
    root = Path(root)
    (root / "out" / "clusters").mkdir(parents=True, exist_ok=True)
    (root / "outbox").mkdir(parents=True, exist_ok=True)
    for language in sorted(state.rounds):
        snapshot = state.rounds[language]
        write_text(root / "out" / "clusters" / f"{language}.rss", clusters_rss(snapshot))
        write_text(root / "out" / "clusters" / f"{language}.json", clusters_json(snapshot))
    write_text(root / "out" / "alerts.rss", alerts_rss(state))

    entries = [feed_entry(d) for d in state.alert_log]
    entries += [_breaking_entry(f) for f in state.breaking if f.round_at is not None]
    for entry in entries:
        write_text(root / "outbox" / f"{entry.guid}.eml", mock_email(entry))


# ── Load ──────────────────────────────────────────────────────────

def _read_profiles(path: Path) -> dict[ProfileKey, SubjectProfile]:
    rows = []
    text = path.read_text(encoding="utf-8")
    if text and not text.endswith("\n"):
        raise StateLoadError("truncated record", str(path), text.count("\n") + 1)
    for number, line in enumerate(text.splitlines(), start=1):
        fields = line.split("\t")
        if len(fields) != 4:
            raise StateLoadError(f"expected 4 fields, got {len(fields)}", str(path), number)
        try:
            rows.append((int(fields[0]), fields[1], fields[2], float(fields[3])))
        except ValueError as e:
            raise StateLoadError(str(e), str(path), number) from e
    return profiles_from_rows(rows)


def _optional(path: Path, model):
    return read_jsonl(path, model) if path.exists() else []


def load_state(directory: str | Path) -> MonitorState:
    """Load every store; any corrupt file fails the whole load.

    A missing directory yields empty stores.
    """
    directory = Path(directory)
    if not directory.exists():
        logger.info(f"No state at {directory}; starting empty")
        return MonitorState()

    articles = _optional(directory / "articles.jsonl", Article)
    entities = _optional(directory / "entities.jsonl", Entity)
    chains = _optional(directory / "chains.jsonl", ChainRecord)
    rounds = _optional(directory / "rounds.jsonl", RoundSnapshot)
    quotes = _optional(directory / "quotes.jsonl", QuoteRecord)
    breaking = _optional(directory / "breaking.jsonl", BreakingNewsFlag)
    alert_states = _optional(directory / "alerts" / "state.jsonl", AlertState)
    alert_log = _optional(directory / "alerts" / "log.jsonl", AlertDecision)
    links = {}
    if (directory / "links").is_dir():
        for path in sorted((directory / "links").glob("*.jsonl")):
            links[path.stem] = read_jsonl(path, LinkEdge)
    profiles_path = directory / "profiles.tsv"
    profiles = _read_profiles(profiles_path) if profiles_path.exists() else None

    return MonitorState(
        articles=ArticleStore(articles),
        entities=EntityStore(entities),
        chains={c.chain_id: c for c in chains},
        rounds={r.language: r for r in rounds},
        quotes=quotes,
        breaking=breaking,
        alert_states={s.key: s for s in alert_states},
        alert_log=alert_log,
        links=links,
        profiles=profiles,
    )
