"""Round orchestration: ingest, annotate, cluster, chain, link, alert, persist."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from functools import cached_property
from pathlib import Path

from newsdesk_mcp.core import alerts
from newsdesk_mcp.core.catdsl import CategoryMatcher, load_categories
from newsdesk_mcp.core.cluster import (
    chain_clusters,
    cluster_window,
    detect_breaking,
    select_window,
    summarize,
)
from newsdesk_mcp.core.geotag import (
    Gazetteer,
    geo_disambiguate,
    geo_parse,
    load_gazetteer,
    load_geostop,
    major_location,
    resolved_places,
)
from newsdesk_mcp.core.ingest import fetch_feeds, load_sources, normalize_items
from newsdesk_mcp.core.names import (
    LanguageParams,
    NormRules,
    Transliterator,
    entity_vector,
    load_params,
    load_rules,
    load_transliterator,
    merge_variant,
    recognize_names,
)
from newsdesk_mcp.core.quotes import QuotePattern, extract_quotes
from newsdesk_mcp.core.resources import RESOURCE_DIR
from newsdesk_mcp.core.state import MonitorState, load_state, persist_state
from newsdesk_mcp.core.subject import load_corpus, load_thesaurus, train_profiles
from newsdesk_mcp.core.text import term_counts, tokenize
from newsdesk_mcp.core.vectors import BackgroundModel, load_background, vectorize_counts
from newsdesk_mcp.core.xlink import fuse_entity_profile, link_clusters, signature
from newsdesk_mcp.errors import NewsdeskError, RoundError
from newsdesk_mcp.models.article import Article, ArticleAnnotations, SourceDescriptor, TaggedName, ensure_utc
from newsdesk_mcp.models.cluster import ChainRecord, Cluster, RoundSnapshot
from newsdesk_mcp.models.config import MonitorConfig
from newsdesk_mcp.models.entity import EntityProfile
from newsdesk_mcp.models.report import LanguageCounts, RoundReport

logger = logging.getLogger(__name__)

DEFAULT_SOURCES = RESOURCE_DIR / "feeds" / "sources.tsv"


@dataclass
class Resources:
    """Linguistic tables loaded once per monitor."""

    matcher: CategoryMatcher
    category_country: dict[str, str]
    gazetteer: Gazetteer
    transliterator: Transliterator
    rules: NormRules
    config: MonitorConfig
    _params: dict[str, LanguageParams] = field(default_factory=dict)
    _geostop: dict[str, frozenset[str]] = field(default_factory=dict)
    _background: dict[str, BackgroundModel | None] = field(default_factory=dict)
    _quote_patterns: dict[str, QuotePattern] = field(default_factory=dict)

    @classmethod
    def load(cls, config: MonitorConfig) -> Resources:
        definitions = load_categories(config.categories.directory)
        return cls(
            matcher=CategoryMatcher(definitions),
            category_country={d.category_id: d.country for d in definitions if d.country},
            gazetteer=load_gazetteer(config.geo.gazetteer),
            transliterator=load_transliterator(config.names.directory),
            rules=load_rules(config.names.directory),
            config=config,
        )

    def params(self, language: str) -> LanguageParams:
        if language not in self._params:
            self._params[language] = load_params(language, self.config.names.directory)
        return self._params[language]

    def geostop(self, language: str) -> frozenset[str]:
        if language not in self._geostop:
            self._geostop[language] = load_geostop(language, self.config.geo.geostop_dir)
        return self._geostop[language]

    def background(self, language: str) -> BackgroundModel | None:
        if language not in self._background:
            model = load_background(language, self.config.paths.models_dir)
            if model is None:
                logger.warning(f"No background model for {language!r}, keyword vectors use raw term frequency")
            self._background[language] = model
        return self._background[language]

    def quote_pattern(self, language: str) -> QuotePattern:
        if language not in self._quote_patterns:
            self._quote_patterns[language] = QuotePattern(self.params(language), self.config.quotes)
        return self._quote_patterns[language]


class Monitor:
    """Runs rounds over one state directory with an injected logical clock."""

    def __init__(
        self,
        config: MonitorConfig | None = None,
        state_dir: str | Path | None = None,
        sources: list[SourceDescriptor] | None = None,
        state: MonitorState | None = None,
    ) -> None:
        self.config = config or MonitorConfig()
        self.state_dir = Path(state_dir or self.config.paths.state_dir)
        self.state = state if state is not None else load_state(self.state_dir)
        self._sources = sources

    @cached_property
    def resources(self) -> Resources:
        return Resources.load(self.config)

    @property
    def sources(self) -> list[SourceDescriptor]:
        if self._sources is None:
            self._sources = load_sources(self.config.ingest.sources_file or DEFAULT_SOURCES)
        return self._sources

    # ── Annotation ────────────────────────────────────────────────

    def annotate(self, article: Article, source_country: str | None = None) -> Article:
        """Categories, names, places and quotes of one new article."""
        res = self.resources
        tokens = tokenize(article.text)
        categories = res.matcher.classify([t.text for t in tokens])
        annotations = ArticleAnnotations(
            categories=sorted(categories),
            countries=sorted({res.category_country[c] for c in categories if c in res.category_country}),
        )

        params = res.params(article.language)
        names = []
        for mention in recognize_names(article, params, self.state.entities, tokens):
            entity_id = merge_variant(mention, self.state.entities, res.transliterator, res.rules, self.config.names)
            names.append(
                TaggedName(
                    surface=mention.surface,
                    start=mention.start,
                    end=mention.end,
                    char_start=mention.char_start,
                    char_end=mention.char_end,
                    entity_id=entity_id,
                    entity_type=mention.entity_type.value,
                    titles=mention.titles,
                )
            )
        annotations.names = names

        mentions = geo_parse(article, res.gazetteer, res.geostop(article.language), tokens)
        mentions = geo_disambiguate(
            mentions, res.gazetteer, [(n.start, n.end) for n in names], source_country, self.config.geo
        )
        annotations.places = resolved_places(mentions, res.gazetteer)

        annotated = article.model_copy(update={"annotations": annotations})
        quotes = extract_quotes(
            annotated, params, self.config.quotes, pattern=res.quote_pattern(article.language)
        )
        annotated.annotations.quote_count = len(quotes)
        self.state.quotes.extend(quotes)
        return annotated

    # ── Stages ────────────────────────────────────────────────────

    def ingest(self, now: datetime) -> tuple[list[Article], list[str]]:
        """Fetch up to ``now``, annotate and store new articles, count them for alerts."""
        now = ensure_utc(now)
        fetched = fetch_feeds(
            self.sources,
            until=now,
            timeout=self.config.ingest.timeout_seconds,
            max_workers=self.config.ingest.max_workers,
        )
        articles, _ = normalize_items(fetched.items, self.sources)
        country_of = {s.source_id: s.country for s in self.sources}

        fresh: dict[str, Article] = {}
        for article in articles:
            if article.article_id not in self.state.articles:
                fresh[article.article_id] = article
        new = []
        for article in sorted(fresh.values(), key=lambda a: (a.published_at, a.article_id)):
            annotated = self.annotate(article, country_of.get(article.source_id))
            self.state.articles.add(annotated)
            new.append(annotated)

        alerts.update_counts(
            self.state.alert_states,
            ((a.annotations.categories, a.annotations.countries, a.published_at) for a in new),
            self.config.alerts,
        )
        errors = [f"{e.source_id}: {e.message}" for e in fetched.errors]
        logger.info(f"Ingested {len(new)} new articles ({len(articles) - len(new)} known)")
        return new, errors

    def _previous(self, language: str, now: datetime) -> tuple[datetime | None, list[Cluster]]:
        snapshot = self.state.rounds.get(language)
        if snapshot is None:
            return None, []
        if snapshot.round_at == now:
            return snapshot.previous_round_at, snapshot.previous_clusters
        return snapshot.round_at, snapshot.clusters

    def _cluster_language(self, language: str, now: datetime) -> RoundSnapshot | None:
        cfg = self.config.cluster
        window = select_window(self.state.articles.by_language(language), now, cfg.window_hours, cfg.window_min_articles)
        if not window:
            return None
        background = self.resources.background(language)
        vectors = {a.article_id: vectorize_counts(term_counts(a.text), background) for a in window}
        clusters = cluster_window(window, vectors, cfg.threshold, now)
        previous_at, previous = self._previous(language, now)
        chained = chain_clusters(clusters, previous, cfg.chain_overlap, {a.article_id for a in window})

        articles = self.state.articles.as_dict()
        majors = {
            c.cluster_id: major_location(
                [p for m in c.members if m in articles for p in articles[m].annotations.places],
                self.resources.gazetteer,
                self.config.geo.hierarchy_credit,
            )
            for c in chained
        }
        return RoundSnapshot(
            language=language,
            round_at=now,
            clusters=chained,
            summaries=summarize(chained, articles, majors),
            previous_round_at=previous_at,
            previous_clusters=previous,
        )

    def _record_chains(self, snapshot: RoundSnapshot) -> None:
        articles = self.state.articles.as_dict()
        for cluster in snapshot.clusters:
            entities = entity_vector(cluster, articles)
            for entity_id in entities:
                self.state.entities.add_refs(entity_id, cluster.cluster_id, cluster.chain_id)
            chain = self.state.chains.get(cluster.chain_id)
            if chain is None:
                chain = ChainRecord(
                    chain_id=cluster.chain_id,
                    language=cluster.language,
                    first_seen=cluster.round_at,
                    last_seen=cluster.round_at,
                )
                self.state.chains[cluster.chain_id] = chain
            chain.first_seen = min(chain.first_seen, cluster.round_at)
            chain.last_seen = max(chain.last_seen, cluster.round_at)
            if cluster.cluster_id not in chain.cluster_ids:
                chain.cluster_ids.append(cluster.cluster_id)
                chain.cluster_ids.sort()
            chain.title = cluster.medoid_title
            chain.size_history = list(cluster.size_history)
            chain.entity_ids = sorted(entities)

    def subject_profiles(self):
        """Trained profiles, or None while subject classification is disabled."""
        settings = self.config.subject
        if not settings.enabled:
            return None
        if self.state.profiles is None:
            classes = load_thesaurus(settings.classes_file)
            self.state.profiles = train_profiles(load_corpus(settings.corpus_dir), settings.profile_size, classes)
        return self.state.profiles

    # ── Round ─────────────────────────────────────────────────────

    def run_round(self, now: datetime) -> RoundReport:
        """One full round at logical time ``now``; re-running it changes nothing."""
        now = ensure_utc(now)
        started = time.perf_counter()
        logger.info(f"Round {now.isoformat()} started")
        report = RoundReport(round_at=now)
        try:
            new, errors = self.ingest(now)
            report.ingested = len(new)
            report.source_errors = errors
            if len(self.state.articles) == 0:
                logger.info("No articles stored, nothing to do")
                report.duration_seconds = time.perf_counter() - started
                return report

            snapshots = {}
            for language in self.state.articles.languages():
                snapshot = self._cluster_language(language, now)
                if snapshot is None:
                    continue
                snapshots[language] = snapshot
                self.state.rounds[language] = snapshot
                self._record_chains(snapshot)
                report.languages[language] = LanguageCounts(
                    articles=len({m for c in snapshot.clusters for m in c.members}),
                    clusters=len(snapshot.clusters),
                )

            flags = []
            for snapshot in snapshots.values():
                for cluster in snapshot.clusters:
                    flag = detect_breaking(cluster, config=self.config.breaking)
                    if flag is not None:
                        flags.append(flag)
            self.state.breaking = [f for f in self.state.breaking if f.round_at != now] + flags
            report.breaking = flags

            articles = self.state.articles.as_dict()
            profiles = self.subject_profiles()
            signatures = {
                language: [
                    signature(c, articles, self.resources.background(language), profiles, self.config.subject.top_k)
                    for c in snapshot.clusters
                ]
                for language, snapshot in snapshots.items()
            }
            day = now.date().isoformat()
            linked = link_clusters(signatures, self.config.link.threshold, self.config.link.weights, day)
            if len(signatures) > 1:
                self.state.links[day] = linked.edges
            report.links = linked.edges

            decisions = alerts.check_all(self.state.alert_states, now, self.config.alerts)
            self.state.alert_log = [d for d in self.state.alert_log if d.timestamp != now] + decisions
            report.alerts = decisions

            persist_state(self.state, self.state_dir)
        except (NewsdeskError, OSError, ValueError) as e:
            logger.error(f"Round {now.isoformat()} aborted: {e}")
            self.state = load_state(self.state_dir)
            raise RoundError(f"Round {now.isoformat()} aborted: {e}") from e

        report.duration_seconds = time.perf_counter() - started
        logger.info(
            f"Round {now.isoformat()} done: {report.ingested} new, {len(report.breaking)} breaking, "
            f"{len(report.links)} links, {len(report.alerts)} alerts"
        )
        return report

    def backfill(self, start: datetime, end: datetime) -> list[RoundReport]:
        """Rounds every cadence step from ``start`` through ``end``."""
        start, end = ensure_utc(start), ensure_utc(end)
        step = timedelta(minutes=self.config.cluster.cadence_minutes)
        reports = []
        now = start
        while now <= end:
            reports.append(self.run_round(now))
            now += step
        return reports

    def save(self) -> None:
        persist_state(self.state, self.state_dir)

    # ── Queries ───────────────────────────────────────────────────

    def entity_profile(self, entity_id: int) -> EntityProfile:
        return fuse_entity_profile(
            entity_id,
            self.state.entities,
            self.state.cluster_languages(),
            self.state.quotes,
            self.state.chains.values(),
        )
