"""Per-round clustering, story chaining and breaking-news detection."""

from __future__ import annotations

import logging
import math
from collections import Counter
from collections.abc import Mapping, Sequence
from datetime import datetime, timedelta

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import squareform

from newsdesk_mcp.core.vectors import EPSILON
from newsdesk_mcp.models.article import Article, ensure_utc
from newsdesk_mcp.models.cluster import (
    BreakingNewsFlag,
    BreakingReason,
    ChainRecord,
    Cluster,
    ClusterFacets,
    ClusterSummary,
    KeywordVector,
    SizePoint,
    TimelinePoint,
)
from newsdesk_mcp.models.config import BreakingSettings

logger = logging.getLogger(__name__)

_BLOCK = 1024
_TIE = 1e-12


def select_window(
    articles: Sequence[Article],
    now: datetime,
    window_hours: float = 4.0,
    min_articles: int = 20,
) -> list[Article]:
    """Latest articles of ``now``'s window, extended back to hold ``min_articles``."""
    now = ensure_utc(now)
    eligible = sorted(
        (a for a in articles if a.published_at <= now),
        key=lambda a: (a.published_at, a.article_id),
        reverse=True,
    )
    start = now - timedelta(hours=window_hours)
    inside = [a for a in eligible if a.published_at >= start]
    if len(inside) < min_articles and len(eligible) > len(inside):
        cutoff = eligible[min(min_articles, len(eligible)) - 1].published_at
        inside = [a for a in eligible if a.published_at >= cutoff]
    return sorted(inside, key=lambda a: (a.published_at, a.article_id))


def _matrix(vectors: Sequence[KeywordVector]) -> tuple[csr_matrix, dict[str, int]]:
    """Row-normalized sparse matrix of the vectors and its vocabulary."""
    vocab: dict[str, int] = {}
    rows, cols, data = [], [], []
    for i, vec in enumerate(vectors):
        items = [(t, w) for t, w in vec.items() if w > 0]
        n = math.sqrt(math.fsum(w * w for _, w in items))
        if n == 0.0:
            continue
        for token, weight in items:
            rows.append(i)
            cols.append(vocab.setdefault(token, len(vocab)))
            data.append(weight / n)
    return csr_matrix((data, (rows, cols)), shape=(len(vectors), max(len(vocab), 1)), dtype=float), vocab


def _partition(matrix: csr_matrix, threshold: float) -> list[list[int]]:
    """Group-average agglomerative clusters, stopping below ``threshold``.

    Components of the ``sim >= threshold`` graph bound every merge, so
    linkage runs per component.
    """
    n = matrix.shape[0]
    if n == 0:
        return []
    blocks = []
    for lo in range(0, n, _BLOCK):
        sims = (matrix[lo:lo + _BLOCK] @ matrix.T).tocoo()
        keep = sims.data >= threshold - _TIE
        blocks.append((sims.row[keep] + lo, sims.col[keep]))
    rows = np.concatenate([b[0] for b in blocks])
    cols = np.concatenate([b[1] for b in blocks])
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    _, labels = connected_components(graph, directed=False)

    groups: dict[int, list[int]] = {}
    for index, label in enumerate(labels):
        groups.setdefault(int(label), []).append(index)

    result: list[list[int]] = []
    for members in groups.values():
        if len(members) == 1:
            result.append(members)
            continue
        sub = matrix[members]
        dist = 1.0 - (sub @ sub.T).toarray()
        np.fill_diagonal(dist, 0.0)
        dist = np.clip((dist + dist.T) / 2.0, 0.0, 2.0)
        tree = linkage(squareform(dist, checks=False), method="average")
        flat = fcluster(tree, t=1.0 - threshold + _TIE, criterion="distance")
        parts: dict[int, list[int]] = {}
        for index, label in zip(members, flat):
            parts.setdefault(int(label), []).append(index)
        result.extend(parts.values())
    return result


def cluster_window(
    articles: Sequence[Article],
    vectors: Mapping[str, KeywordVector],
    threshold: float,
    round_at: datetime,
) -> list[Cluster]:
    """Cluster one language's window; largest cluster first."""
    if not articles:
        return []
    languages = {a.language for a in articles}
    if len(languages) != 1:
        raise ValueError(f"cluster_window needs one language, got {sorted(languages)}")
    language = languages.pop()
    round_at = ensure_utc(round_at)

    ordered = sorted(articles, key=lambda a: (a.published_at, a.article_id))
    matrix, vocab = _matrix([vectors.get(a.article_id, {}) for a in ordered])
    tokens = sorted(vocab, key=vocab.get)
    groups = _partition(matrix, threshold)

    def group_key(group: list[int]):
        return (-len(group), ordered[group[0]].published_at, min(ordered[i].article_id for i in group))

    groups = [sorted(g) for g in groups]
    groups.sort(key=group_key)

    clusters = []
    for number, group in enumerate(groups, start=1):
        members = [ordered[i] for i in group]
        sub = matrix[group]
        mean = np.asarray(sub.mean(axis=0)).ravel()
        length = float(np.linalg.norm(mean))
        centroid_arr = mean / length if length > 0 else mean
        sims = np.asarray(sub @ centroid_arr).ravel() if length > 0 else np.zeros(len(group))
        best = min(range(len(group)), key=lambda j: (-sims[j], members[j].published_at, members[j].article_id))
        medoid = members[best]
        centroid = {tokens[j]: float(centroid_arr[j]) for j in np.flatnonzero(centroid_arr >= EPSILON)}
        clusters.append(
            Cluster(
                cluster_id=f"{language}-{round_at:%Y%m%d%H%M}-{number:03d}",
                language=language,
                members=sorted(a.article_id for a in members),
                window_size=len(members),
                centroid=dict(sorted(centroid.items())),
                medoid_article_id=medoid.article_id,
                medoid_title=medoid.title,
                round_at=round_at,
                source_ids=sorted({a.source_id for a in members}),
            )
        )
    logger.info(f"Clustered {len(ordered)} {language} articles into {len(clusters)} clusters")
    return clusters


def chain_clusters(
    current: Sequence[Cluster],
    previous: Sequence[Cluster],
    min_overlap: float = 0.10,
    window_ids: set[str] | None = None,
) -> list[Cluster]:
    """Link this round's clusters to the previous round's stories by article overlap.

    ``C`` links to ``P`` when ``|C ∩ P| / |C| >= min_overlap``; the best fraction
    wins, then the larger ``P``, then the older chain id. Linked clusters take
    ``P``'s chain id, size history and its members that left the window.
    """
    if window_ids is None:
        window_ids = {m for c in current for m in c.members}
    chained = []
    for number, cluster in enumerate(current, start=1):
        members = set(cluster.members)
        best = None
        best_key = None
        for prior in previous:
            shared = len(members & set(prior.members))
            if shared == 0:
                continue
            fraction = shared / len(members)
            if fraction < min_overlap:
                continue
            key = (-fraction, -prior.size, prior.chain_id or prior.cluster_id)
            if best_key is None or key < best_key:
                best, best_key = prior, key
        if best is None:
            chain_id = f"{cluster.round_at:%Y%m%d%H%M}-{cluster.language}-{number:03d}"
            history: list[SizePoint] = []
            is_new = True
        else:
            chain_id = best.chain_id or best.cluster_id
            members |= {m for m in best.members if m not in window_ids}
            history = [p for p in best.size_history if p.timestamp < cluster.round_at]
            is_new = False
        point = SizePoint(timestamp=cluster.round_at, size=len(members))
        chained.append(
            cluster.model_copy(
                update={
                    "chain_id": chain_id,
                    "is_new": is_new,
                    "members": sorted(members),
                    "size_history": [*history, point],
                }
            )
        )
    return chained


def size_at(history: Sequence[SizePoint], when: datetime) -> int:
    """Size of the last history point at or before ``when``; 0 before the first."""
    size = 0
    for point in history:
        if point.timestamp <= when:
            size = point.size
        else:
            break
    return size


def detect_breaking(
    cluster: Cluster,
    history: Sequence[SizePoint] | None = None,
    config: BreakingSettings | None = None,
    source_count: int | None = None,
) -> BreakingNewsFlag | None:
    """Flag a new large story or a rapidly rising one."""
    config = config or BreakingSettings()
    history = list(cluster.size_history if history is None else history)
    now = history[-1].timestamp if history else cluster.round_at
    size = history[-1].size if history else cluster.size
    sources = len(cluster.source_ids) if source_count is None else source_count

    recent_start = now - timedelta(minutes=config.recent_minutes)
    earlier = [p for p in history if p.timestamp <= recent_start]
    recent = size - size_at(earlier, recent_start)

    if cluster.is_new and size >= config.min_size and sources >= config.min_sources:
        return BreakingNewsFlag(
            cluster_id=cluster.cluster_id,
            chain_id=cluster.chain_id,
            language=cluster.language,
            reason=BreakingReason.NEW_LARGE,
            articles_30min=max(recent, 0),
            distinct_sources=sources,
            round_at=now,
        )

    if not earlier or size < config.min_size:
        return None
    baseline_start = recent_start - timedelta(hours=config.baseline_hours)
    periods = config.baseline_hours * 60.0 / config.recent_minutes
    rate = max(size_at(earlier, recent_start) - size_at(earlier, baseline_start), 0) / periods
    if recent > 0 and recent >= config.rise_ratio * rate:
        return BreakingNewsFlag(
            cluster_id=cluster.cluster_id,
            chain_id=cluster.chain_id,
            language=cluster.language,
            reason=BreakingReason.RAPID_RISE,
            articles_30min=recent,
            distinct_sources=sources,
            round_at=now,
        )
    return None


def story_timeline(chain: ChainRecord) -> list[TimelinePoint]:
    """Story size at the last round of each day."""
    per_day: dict[str, int] = {}
    for point in chain.size_history:
        per_day[point.timestamp.date().isoformat()] = point.size
    return [TimelinePoint(day=day, size=size) for day, size in sorted(per_day.items())]


def cluster_facets(cluster: Cluster, articles: Mapping[str, Article]) -> ClusterFacets:
    """Share of members per category and per country category."""
    members = [articles[m] for m in cluster.members if m in articles]
    if not members:
        return ClusterFacets()
    categories: Counter[str] = Counter()
    countries: Counter[str] = Counter()
    for article in members:
        categories.update(set(article.annotations.categories))
        countries.update(set(article.annotations.countries))
    n = len(members)
    return ClusterFacets(
        categories={k: v / n for k, v in sorted(categories.items())},
        countries={k: v / n for k, v in sorted(countries.items())},
    )


def summarize(
    clusters: Sequence[Cluster],
    articles: Mapping[str, Article],
    major_locations: Mapping[str, int | None] | None = None,
) -> list[ClusterSummary]:
    """Top-stories listing: one summary per cluster in size order."""
    summaries = []
    for rank, cluster in enumerate(clusters, start=1):
        medoid = articles.get(cluster.medoid_article_id)
        latest = max(
            (articles[m].published_at for m in cluster.members if m in articles),
            default=cluster.round_at,
        )
        summaries.append(
            ClusterSummary(
                rank=rank,
                cluster_id=cluster.cluster_id,
                chain_id=cluster.chain_id,
                language=cluster.language,
                title=cluster.medoid_title,
                url=medoid.url if medoid else "",
                published_at=latest,
                size=cluster.size,
                source_count=len(cluster.source_ids),
                is_new=cluster.is_new,
                major_location=(major_locations or {}).get(cluster.cluster_id),
                facets=cluster_facets(cluster, articles),
            )
        )
    return summaries
