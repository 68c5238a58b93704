"""Cross-lingual cluster signatures, link scoring and entity profile fusion."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Mapping, Sequence

from newsdesk_mcp.core.geotag import country_vector
from newsdesk_mcp.core.names.store import EntityStore, cooccurrence, entity_vector
from newsdesk_mcp.core.subject import ProfileKey, classify_subjects
from newsdesk_mcp.core.text import term_counts
from newsdesk_mcp.core.vectors import BackgroundModel, cosine, vectorize_counts
from newsdesk_mcp.models.article import Article
from newsdesk_mcp.models.cluster import ChainRecord, Cluster
from newsdesk_mcp.models.config import LinkWeights
from newsdesk_mcp.models.entity import CoOccurrence, EntityProfile, QuoteRecord
from newsdesk_mcp.models.link import ClusterSignature, LinkEdge, LinkParts, LinkResult
from newsdesk_mcp.models.subject import SubjectProfile

logger = logging.getLogger(__name__)


def cluster_text(cluster: Cluster, articles: Mapping[str, Article]) -> str:
    """Concatenated member text in member order."""
    return "\n".join(articles[m].text for m in cluster.members if m in articles)


def signature(
    cluster: Cluster,
    articles: Mapping[str, Article],
    background: BackgroundModel | None = None,
    profiles: Mapping[ProfileKey, SubjectProfile] | None = None,
    top_k: int = 6,
) -> ClusterSignature:
    """Assemble the four ingredients; a missing one stays empty."""
    members = [articles[m] for m in cluster.members if m in articles]
    if len(members) < len(cluster.members):
        logger.warning(f"Cluster {cluster.cluster_id}: {len(cluster.members) - len(members)} members not in store")

    text = "\n".join(a.text for a in members)
    counts = term_counts(text)
    if background is None:
        logger.warning(f"Cluster {cluster.cluster_id}: no background model, keyword ingredient uses raw counts")
    keyword = vectorize_counts(counts, background)

    if profiles is None:
        logger.warning(f"Cluster {cluster.cluster_id}: subject classification disabled")
        subject = {}
    else:
        subject = classify_subjects(counts, cluster.language, profiles, top_k)

    places = [p for a in members for p in a.annotations.places]
    return ClusterSignature(
        cluster_id=cluster.cluster_id,
        language=cluster.language,
        subject=subject,
        country=country_vector(places),
        entity=entity_vector(cluster, articles),
        keyword=keyword,
    )


def link_score(sa: ClusterSignature, sb: ClusterSignature, weights: LinkWeights | None = None) -> tuple[float, LinkParts]:
    """Weighted sum of the four ingredient cosines."""
    weights = weights or LinkWeights()
    parts = LinkParts(
        subject=cosine(sa.subject, sb.subject),
        country=cosine(sa.country, sb.country),
        entity=cosine(sa.entity, sb.entity),
        keyword=cosine(sa.keyword, sb.keyword),
    )
    return combine(parts, weights), parts


def combine(parts: LinkParts, weights: LinkWeights | None = None) -> float:
    weights = weights or LinkWeights()
    return (
        weights.subject * parts.subject
        + weights.country * parts.country
        + weights.entity * parts.entity
        + weights.keyword * parts.keyword
    )


def link_clusters(
    signatures: Mapping[str, Sequence[ClusterSignature]],
    threshold: float = 0.5,
    weights: LinkWeights | None = None,
    date: str = "",
) -> LinkResult:
    """Score every cross-language cluster pair of every language pair."""
    languages = sorted(signatures)
    edges = []
    pairs = 0
    for lang_a, lang_b in itertools.combinations(languages, 2):
        pairs += 1
        for sa in signatures[lang_a]:
            for sb in signatures[lang_b]:
                combined, parts = link_score(sa, sb, weights)
                if combined >= threshold:
                    edges.append(
                        LinkEdge(
                            date=date,
                            cluster_a=sa.cluster_id,
                            language_a=lang_a,
                            cluster_b=sb.cluster_id,
                            language_b=lang_b,
                            combined=combined,
                            parts=parts,
                        )
                    )
    edges.sort(key=lambda e: (-e.combined, e.cluster_a, e.cluster_b))
    logger.info(f"Linked {len(languages)} languages: {pairs} pairs, {len(edges)} edges")
    return LinkResult(edges=edges, pairs_examined=pairs)


def fuse_entity_profile(
    entity_id: int,
    store: EntityStore,
    cluster_languages: Mapping[str, str] | None = None,
    quotes: Iterable[QuoteRecord] = (),
    chains: Iterable[ChainRecord] = (),
    top_n: int = 10,
) -> EntityProfile:
    """Everything known about an entity across languages; unknown ids raise."""
    entity = store[entity_id]
    cluster_languages = cluster_languages or {}

    clusters: dict[str, list[str]] = {}
    for cluster_id in entity.cluster_refs:
        language = cluster_languages.get(cluster_id) or cluster_id.split("-", 1)[0]
        clusters.setdefault(language, []).append(cluster_id)

    pairs = cooccurrence(c.entity_ids for c in chains)
    partners = []
    for (a, b), stats in pairs.items():
        if entity_id in (a, b):
            other = b if a == entity_id else a
            partners.append(CoOccurrence(entity_id=other, count=stats.count, weighted=stats.weighted))
    partners.sort(key=lambda p: (-p.weighted, -p.count, p.entity_id))

    own_quotes = sorted(
        (q for q in quotes if q.entity_id == entity_id),
        key=lambda q: (q.published_at is None, q.published_at, q.article_id, q.span_start),
    )
    return EntityProfile(
        entity_id=entity.entity_id,
        entity_type=entity.entity_type,
        canonical=entity.canonical,
        variants=list(entity.variants),
        titles=dict(sorted(entity.titles.items())),
        clusters={lang: sorted(ids) for lang, ids in sorted(clusters.items())},
        stories=list(entity.chain_refs),
        quotes=own_quotes,
        cooccurring=partners[:top_n],
    )
