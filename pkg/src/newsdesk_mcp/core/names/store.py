"""Entity store: variant lookup, merging, entity vectors and co-occurrence."""

from __future__ import annotations

import itertools
import logging
import threading
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from typing import NamedTuple

from newsdesk_mcp.core.names.canonical import NormRules, canonicalize, normalize, similarity
from newsdesk_mcp.core.names.translit import Transliterator
from newsdesk_mcp.core.text import words
from newsdesk_mcp.errors import EntityNotFoundError
from newsdesk_mcp.models.article import Article
from newsdesk_mcp.models.cluster import Cluster
from newsdesk_mcp.models.config import NameSettings
from newsdesk_mcp.models.entity import Entity, EntityVector, NameMention

logger = logging.getLogger(__name__)


class EntityStore:
    """Single-writer store of entities keyed by numeric id."""

    def __init__(self, entities: Iterable[Entity] = ()) -> None:
        self.lock = threading.Lock()
        self.entities: dict[int, Entity] = {}
        self._variants: dict[str, int] = {}
        self._variant_tokens: dict[tuple[str, ...], int] = {}
        self._canonical: dict[str, list[int]] = {}
        self._max_tokens = 0
        for entity in entities:
            self._index(entity)

    def _index(self, entity: Entity) -> None:
        self.entities[entity.entity_id] = entity
        self._canonical.setdefault(entity.canonical, [])
        if entity.entity_id not in self._canonical[entity.canonical]:
            self._canonical[entity.canonical].append(entity.entity_id)
            self._canonical[entity.canonical].sort()
        for variant in entity.variants:
            self._index_variant(variant, entity.entity_id)

    def _index_variant(self, variant: str, entity_id: int) -> None:
        self._variants.setdefault(variant, entity_id)
        key = tuple(words(variant))
        if key:
            self._variant_tokens.setdefault(key, entity_id)
            self._max_tokens = max(self._max_tokens, len(key))

    def __len__(self) -> int:
        return len(self.entities)

    def __contains__(self, entity_id: int) -> bool:
        return entity_id in self.entities

    def __getitem__(self, entity_id: int) -> Entity:
        try:
            return self.entities[entity_id]
        except KeyError:
            raise EntityNotFoundError(f"Unknown entity id: {entity_id}") from None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EntityStore) and self.sorted() == other.sorted()

    def sorted(self) -> list[Entity]:
        return [self.entities[k] for k in sorted(self.entities)]

    def variant_id(self, surface: str) -> int | None:
        return self._variants.get(surface)

    def by_canonical(self, canonical: str) -> list[int]:
        return list(self._canonical.get(canonical, ()))

    def find_variants(self, tokens: Sequence[str]) -> list[tuple[int, int, int]]:
        """Longest known-variant matches as (start, end, entity_id)."""
        found = []
        if not self._variant_tokens:
            return found
        for i in range(len(tokens)):
            for length in range(min(self._max_tokens, len(tokens) - i), 0, -1):
                entity_id = self._variant_tokens.get(tuple(tokens[i:i + length]))
                if entity_id is not None:
                    found.append((i, i + length, entity_id))
                    break
        return found

    def next_id(self) -> int:
        return max(self.entities, default=0) + 1

    def create(self, mention: NameMention, canonical: str) -> Entity:
        entity = Entity(
            entity_id=self.next_id(),
            entity_type=mention.entity_type,
            variants=[mention.surface],
            canonical=canonical,
            titles=dict(Counter(mention.titles)),
        )
        self._index(entity)
        return entity

    def add_variant(self, entity_id: int, surface: str, titles: Iterable[str] = ()) -> None:
        entity = self[entity_id]
        if surface not in entity.variants:
            entity.variants.append(surface)
            self._index_variant(surface, entity_id)
        for title in titles:
            entity.titles[title] = entity.titles.get(title, 0) + 1

    def add_refs(self, entity_id: int, cluster_id: str, chain_id: str | None) -> None:
        entity = self[entity_id]
        if cluster_id not in entity.cluster_refs:
            entity.cluster_refs.append(cluster_id)
            entity.cluster_refs.sort()
        if chain_id and chain_id not in entity.chain_refs:
            entity.chain_refs.append(chain_id)
            entity.chain_refs.sort()


def merge_variant(
    mention: NameMention,
    store: EntityStore,
    transliterator: Transliterator,
    rules: NormRules,
    settings: NameSettings | None = None,
) -> int:
    """Entity id for a mention, merging it into a matching entity or creating one."""
    settings = settings or NameSettings()
    with store.lock:
        known = store.variant_id(mention.surface)
        if known is not None:
            store.add_variant(known, mention.surface, mention.titles)
            return known

        latin = transliterator.transliterate(mention.surface)
        canonical = canonicalize(latin, rules)
        normalized = normalize(latin, rules)

        best_id, best_score = None, -1.0
        for entity_id in store.by_canonical(canonical):
            primary = transliterator.transliterate(store[entity_id].primary)
            score = settings.surface_weight * similarity(latin, primary) + settings.normalized_weight * similarity(
                normalized, normalize(primary, rules)
            )
            if score > best_score:
                best_id, best_score = entity_id, score

        if best_id is not None and best_score >= settings.merge_threshold:
            store.add_variant(best_id, mention.surface, mention.titles)
            logger.info(f"Merged variant {mention.surface!r} into entity {best_id} (score {best_score:.3f})")
            return best_id

        entity = store.create(mention, canonical)
        logger.info(f"New entity {entity.entity_id}: {mention.surface!r} [{canonical}]")
        return entity.entity_id


def entity_vector(cluster: Cluster, articles: Mapping[str, Article]) -> EntityVector:
    """Mention count per entity id across the cluster's members."""
    counts: Counter[int] = Counter()
    for member in cluster.members:
        article = articles.get(member)
        if article is not None:
            counts.update(n.entity_id for n in article.annotations.names)
    return dict(sorted(counts.items()))


class PairStats(NamedTuple):
    count: int
    weighted: float


def cooccurrence(entity_sets: Iterable[Iterable[int]]) -> dict[tuple[int, int], PairStats]:
    """Pair counts of entities sharing a cluster, plus ``sum 1/(n-1)`` weights."""
    counts: dict[tuple[int, int], int] = {}
    weights: dict[tuple[int, int], float] = {}
    for entities in entity_sets:
        members = sorted(set(entities))
        if len(members) < 2:
            continue
        share = 1.0 / (len(members) - 1)
        for pair in itertools.combinations(members, 2):
            counts[pair] = counts.get(pair, 0) + 1
            weights[pair] = weights.get(pair, 0.0) + share
    return {pair: PairStats(counts[pair], weights[pair]) for pair in sorted(counts)}
