"""Gazetteer lookup, toponym disambiguation and country vectors."""

from __future__ import annotations

import logging
import math
from collections import Counter
from collections.abc import Iterable, Sequence
from pathlib import Path

from pydantic import ValidationError

from newsdesk_mcp.core.resources import read_lines, read_tsv, resolve
from newsdesk_mcp.core.text import Token, tokenize
from newsdesk_mcp.errors import ResourceError
from newsdesk_mcp.models.article import Article, ResolvedPlace
from newsdesk_mcp.models.config import GeoSettings
from newsdesk_mcp.models.geo import CountryVector, GazetteerEntry, GeoMention, SizeClass

logger = logging.getLogger(__name__)

EARTH_RADIUS_KM = 6371.0088
ANY_LANGUAGE = "*"


def haversine(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    """Great-circle distance in kilometres."""
    p1, p2 = math.radians(lat1), math.radians(lat2)
    dp = p2 - p1
    dl = math.radians(lon2 - lon1)
    a = math.sin(dp / 2) ** 2 + math.cos(p1) * math.cos(p2) * math.sin(dl / 2) ** 2
    return 2 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(a)))


class Gazetteer:
    """Place names indexed by language and token sequence."""

    def __init__(self, entries: Iterable[GazetteerEntry]) -> None:
        self.entries: dict[int, GazetteerEntry] = {e.location_id: e for e in entries}
        self._index: dict[str, dict[tuple[str, ...], set[int]]] = {}
        self.max_tokens = 1
        for entry in self.entries.values():
            for language, names in entry.names.items():
                table = self._index.setdefault(language, {})
                for name in names:
                    key = tuple(t.text for t in tokenize(name))
                    if key:
                        table.setdefault(key, set()).add(entry.location_id)
                        self.max_tokens = max(self.max_tokens, len(key))
        self._check_hierarchy()

    def _check_hierarchy(self) -> None:
        for entry in self.entries.values():
            seen = {entry.location_id}
            node = entry
            while node.parent_id is not None:
                parent = self.entries.get(node.parent_id)
                if parent is None:
                    raise ResourceError(f"Location {node.location_id} has unknown parent {node.parent_id}")
                if parent.location_id in seen:
                    raise ResourceError(f"Parent cycle at location {parent.location_id}")
                seen.add(parent.location_id)
                node = parent
            if node.size_class != SizeClass.COUNTRY:
                raise ResourceError(f"Parent chain of location {entry.location_id} does not end at a country")

    def __getitem__(self, location_id: int) -> GazetteerEntry:
        return self.entries[location_id]

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, key: tuple[str, ...], language: str) -> set[int]:
        found = set(self._index.get(language, {}).get(key, ()))
        found |= self._index.get(ANY_LANGUAGE, {}).get(key, set())
        return found

    def ancestors(self, location_id: int) -> list[int]:
        """Parent chain, nearest first."""
        chain = []
        node = self.entries[location_id]
        while node.parent_id is not None:
            chain.append(node.parent_id)
            node = self.entries[node.parent_id]
        return chain


def load_gazetteer(path: str | Path | None = None) -> Gazetteer:
    """Read ``gazetteer.tsv``: one row per (location, language, name)."""
    path = resolve(path, "gazetteer.tsv")
    rows: dict[int, dict] = {}
    for location_id, lang, name, lat, lon, size_class, country, parent_id in read_tsv(path, 8):
        try:
            key = int(location_id)
            row = rows.setdefault(
                key,
                {
                    "location_id": key,
                    "names": {},
                    "latitude": float(lat),
                    "longitude": float(lon),
                    "size_class": size_class,
                    "country": country.upper(),
                    "parent_id": int(parent_id) if parent_id else None,
                },
            )
        except ValueError as e:
            raise ResourceError(f"{path}: bad row for location {location_id}: {e}") from e
        row["names"].setdefault(lang, []).append(name)
    try:
        entries = [GazetteerEntry.model_validate(r) for r in rows.values()]
    except ValidationError as e:
        raise ResourceError(f"{path}: {e}") from e
    gazetteer = Gazetteer(entries)
    logger.info(f"Loaded gazetteer with {len(gazetteer)} locations from {path}")
    return gazetteer


def load_geostop(language: str, directory: str | Path | None = None) -> frozenset[str]:
    """Casefolded geo-stop surface forms of one language (empty when none ship)."""
    path = resolve(directory, "geostop") / f"{language}.txt"
    if not path.is_file():
        return frozenset()
    return frozenset(line.casefold() for line in read_lines(path))


def geo_parse(
    article: Article,
    gazetteer: Gazetteer,
    geo_stop: frozenset[str] = frozenset(),
    tokens: Sequence[Token] | None = None,
) -> list[GeoMention]:
    """Longest case-sensitive gazetteer matches, minus geo-stop words."""
    tokens = tokenize(article.text) if tokens is None else tokens
    texts = [t.text for t in tokens]
    mentions = []
    i = 0
    while i < len(texts):
        found = None
        for length in range(min(gazetteer.max_tokens, len(texts) - i), 0, -1):
            key = tuple(texts[i:i + length])
            candidates = gazetteer.lookup(key, article.language)
            if candidates:
                found = (length, candidates)
                break
        if found is None:
            i += 1
            continue
        length, candidates = found
        surface = article.text[tokens[i].start:tokens[i + length - 1].end]
        if surface.casefold() in geo_stop:
            i += length
            continue
        mentions.append(
            GeoMention(surface=surface, token_offset=i, token_end=i + length, candidates=sorted(candidates))
        )
        i += length
    return mentions


def geo_disambiguate(
    mentions: Sequence[GeoMention],
    gazetteer: Gazetteer,
    name_spans: Iterable[tuple[int, int]] = (),
    source_country: str | None = None,
    config: GeoSettings | None = None,
) -> list[GeoMention]:
    """Resolve mentions with the rule cascade; dropped mentions are omitted."""
    config = config or GeoSettings()
    spans = list(name_spans)
    kept = [
        m for m in mentions
        if not any(start <= m.token_offset and m.token_end <= end for start, end in spans)
    ]

    anchors = [gazetteer[m.candidates[0]] for m in kept if not m.is_ambiguous]
    anchor_countries = {a.country for a in anchors}
    if source_country:
        anchor_countries.add(source_country.upper())

    resolved = []
    for mention in kept:
        if not mention.is_ambiguous:
            resolved.append(mention.model_copy(update={"resolved": mention.candidates[0]}))
            continue
        scores = {cid: 0.0 for cid in mention.candidates}
        for cid in mention.candidates:
            entry = gazetteer[cid]
            if entry.country in anchor_countries:
                scores[cid] += config.country_score
            scores[cid] += config.size_scores.get(entry.size_class.value, 0.0)
        if anchors:
            distance = {
                cid: min(
                    haversine(gazetteer[cid].latitude, gazetteer[cid].longitude, a.latitude, a.longitude)
                    for a in anchors
                )
                for cid in mention.candidates
            }
            nearest = min(distance.values())
            for cid, d in distance.items():
                if d == nearest:
                    scores[cid] += config.distance_score
        winner = min(
            mention.candidates,
            key=lambda cid: (-scores[cid], -gazetteer[cid].size_class.rank, cid),
        )
        resolved.append(mention.model_copy(update={"resolved": winner}))
    return resolved


def resolved_places(mentions: Iterable[GeoMention], gazetteer: Gazetteer) -> list[ResolvedPlace]:
    return [
        ResolvedPlace(
            surface=m.surface,
            token_offset=m.token_offset,
            location_id=m.resolved,
            country=gazetteer[m.resolved].country,
        )
        for m in mentions
        if m.resolved is not None
    ]


def _depth(gazetteer: Gazetteer, location_id: int) -> int:
    return len(gazetteer.ancestors(location_id))


def major_location(
    places: Iterable[ResolvedPlace | int],
    gazetteer: Gazetteer,
    credit: float = 0.5,
) -> int | None:
    """Location with the most mention weight, ancestors credited per level."""
    weights: dict[int, float] = {}
    for place in places:
        location_id = place if isinstance(place, int) else place.location_id
        weights[location_id] = weights.get(location_id, 0.0) + 1.0
        share = 1.0
        for ancestor in gazetteer.ancestors(location_id):
            share *= credit
            weights[ancestor] = weights.get(ancestor, 0.0) + share
    if not weights:
        return None
    top = max(weights.values())
    best = [lid for lid, w in weights.items() if math.isclose(w, top, rel_tol=0.0, abs_tol=1e-12)]
    return min(
        best,
        key=lambda lid: (-_depth(gazetteer, lid), -gazetteer[lid].size_class.rank, lid),
    )


def country_vector(places: Iterable[ResolvedPlace]) -> CountryVector:
    """Mention count per ISO country code."""
    counts = Counter(p.country for p in places)
    return dict(sorted(counts.items()))
