"""Reported-speech extraction: name, optional insert, verb, quote marks."""

from __future__ import annotations

import re
from collections import Counter
from collections.abc import Iterable, Sequence

from newsdesk_mcp.core.names.params import LanguageParams
from newsdesk_mcp.models.article import Article, TaggedName
from newsdesk_mcp.models.config import QuoteSettings
from newsdesk_mcp.models.entity import EntityType, QuoteRecord


class QuotePattern:
    """Compiled slot pattern for one language and one quote-mark set."""

    def __init__(self, params: LanguageParams, settings: QuoteSettings | None = None) -> None:
        settings = settings or QuoteSettings()
        self.max_insert = settings.max_insert
        self.closers: dict[str, list[str]] = {}
        for opener, closer in settings.marks:
            self.closers.setdefault(opener, [])
            if closer not in self.closers[opener]:
                self.closers[opener].append(closer)
        self.regex = None
        if params.reporting_verbs and self.closers:
            verbs = "|".join(re.escape(v) for v in params.reporting_verbs)
            that = sorted(params.that, key=lambda t: (-len(t), t))
            that_part = f"(?:(?:{'|'.join(re.escape(t) for t in that)})\\s+)?" if that else ""
            openers = "|".join(re.escape(o) for o in sorted(self.closers, key=lambda o: (-len(o), o)))
            self.regex = re.compile(
                r"(?:\s*,(?P<insert>[^,\n]+),)?"
                rf"\s*(?P<verb>{verbs})(?!\w)"
                r"\s*:?\s*"
                rf"{that_part}"
                rf"(?P<open>{openers})"
            )

    def match_after(self, body: str, pos: int) -> tuple[str, int, int, int] | None:
        """(verb, quote start, quote end, span end) for a quote right after ``pos``."""
        if self.regex is None:
            return None
        m = self.regex.match(body, pos)
        if m is None:
            return None
        insert = m.group("insert")
        if insert is not None and len(insert) > self.max_insert:
            return None
        opener = m.group("open")
        start = m.end()
        ends = [body.find(c, start) for c in self.closers[opener]]
        ends = [(e, c) for e, c in zip(ends, self.closers[opener]) if e > start]
        if not ends:
            return None
        end, closer = min(ends)
        if not body[start:end].strip():
            return None
        return m.group("verb"), start, end, end + len(closer)


def _body_names(article: Article) -> tuple[int, list[TaggedName]]:
    """Offset of the body inside ``article.text`` and the names inside the body."""
    offset = len(article.title) + 1 if article.title and article.body else 0
    if not article.body:
        return offset, []
    return offset, [n for n in article.annotations.names if n.char_start >= offset]


def extract_quotes(
    article: Article,
    params: LanguageParams,
    settings: QuoteSettings | None = None,
    names: Sequence[TaggedName] | None = None,
    pattern: QuotePattern | None = None,
) -> list[QuoteRecord]:
    """Quotes introduced by a tagged person name, left to right, non-overlapping."""
    pattern = pattern or QuotePattern(params, settings)
    body = article.body
    offset, body_names = _body_names(article)
    if names is not None:
        body_names = [n for n in names if n.char_start >= offset]
    body_names = sorted(body_names, key=lambda n: n.char_start)

    records = []
    consumed = 0
    for name in body_names:
        if name.entity_type != EntityType.PERSON.value:
            continue
        start = name.char_start - offset
        if start < consumed:
            continue
        found = pattern.match_after(body, name.char_end - offset)
        if found is None:
            continue
        verb, q_start, q_end, span_end = found
        inside = sorted(
            {
                n.entity_id
                for n in body_names
                if n.char_start - offset >= q_start and n.char_end - offset <= q_end and n.entity_id != name.entity_id
            }
        )
        records.append(
            QuoteRecord(
                entity_id=name.entity_id,
                speaker=name.surface,
                verb=verb,
                quote_text=body[q_start:q_end],
                article_id=article.article_id,
                language=article.language,
                published_at=article.published_at,
                span_start=start,
                span_end=span_end,
                quote_start=q_start,
                quote_end=q_end,
                mentioned_entities=inside,
            )
        )
        consumed = span_end
    return records


def speech_network(quotes: Iterable[QuoteRecord]) -> dict[tuple[int, int], int]:
    """How often each speaker named each other entity inside a quote."""
    edges: Counter[tuple[int, int]] = Counter()
    for quote in quotes:
        for mentioned in quote.mentioned_entities:
            edges[(quote.entity_id, mentioned)] += 1
    return dict(sorted(edges.items()))
