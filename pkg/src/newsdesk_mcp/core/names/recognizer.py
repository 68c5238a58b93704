"""Capitalization and trigger-word name recognition."""

from __future__ import annotations

import re
from collections.abc import Sequence
from typing import TYPE_CHECKING

from newsdesk_mcp.core.names.params import LanguageParams
from newsdesk_mcp.core.text import Token, tokenize
from newsdesk_mcp.models.article import Article
from newsdesk_mcp.models.entity import EntityType, NameMention

if TYPE_CHECKING:
    from newsdesk_mcp.core.names.store import EntityStore

# Tokens of one name are separated by spaces on one line, or a hyphen/apostrophe.
_JOINER = re.compile(r"[^\S\n]+|[-'’]")
_SPACE = re.compile(r"[^\S\n]+")
_AGE = re.compile(r"(\d{1,3})[-‐ ]year[-‐ ]old[^\S\n]*$")


def _capitalized(token: Token) -> bool:
    return token.text[:1].isupper()


def _joined(text: str, left: Token, right: Token, pattern: re.Pattern[str] = _JOINER) -> bool:
    return pattern.fullmatch(text[left.end:right.start]) is not None


def _titles_before(text: str, tokens: Sequence[Token], index: int, params: LanguageParams) -> list[str]:
    """Trigger words and age phrases directly preceding token ``index``."""
    j = index
    while j > 0 and tokens[j - 1].text.casefold() in params.titles and _joined(text, tokens[j - 1], tokens[j], _SPACE):
        j -= 1
    titles = []
    age = _AGE.search(text[max(0, tokens[j].start - 24):tokens[j].start])
    if age:
        titles.append(f"{age.group(1)}-year-old")
    if j < index:
        titles.append(text[tokens[j].start:tokens[index - 1].end])
    return titles


def recognize_names(
    article: Article,
    params: LanguageParams,
    store: EntityStore | None = None,
    tokens: Sequence[Token] | None = None,
) -> list[NameMention]:
    """Person and organization mentions, left to right, non-overlapping.

    New names need at least two capitalized tokens; known variants of the
    store match at any length.
    """
    text = article.text
    tokens = tokenize(text) if tokens is None else list(tokens)
    candidates: list[NameMention] = []

    i = 0
    while i < len(tokens):
        if not _capitalized(tokens[i]):
            i += 1
            continue
        j = i + 1
        while j < len(tokens) and _capitalized(tokens[j]) and _joined(text, tokens[j - 1], tokens[j]):
            j += 1
        start = i
        while start < j and tokens[start].text.casefold() in params.stopwords:
            start += 1
        lead = start
        while start < j and tokens[start].text.casefold() in params.titles:
            start += 1
        if j - start >= 2:
            titles = _titles_before(text, tokens, lead, params)
            if start > lead:
                titles.append(text[tokens[lead].start:tokens[start - 1].end])
            last = tokens[j - 1].text.casefold()
            entity_type = EntityType.ORGANIZATION if last in params.org_suffixes else EntityType.PERSON
            candidates.append(
                NameMention(
                    surface=text[tokens[start].start:tokens[j - 1].end],
                    start=start,
                    end=j,
                    char_start=tokens[start].start,
                    char_end=tokens[j - 1].end,
                    entity_type=entity_type,
                    titles=titles,
                )
            )
        i = j

    if store is not None:
        for start, end, entity_id in store.find_variants([t.text for t in tokens]):
            entity = store[entity_id]
            candidates.append(
                NameMention(
                    surface=text[tokens[start].start:tokens[end - 1].end],
                    start=start,
                    end=end,
                    char_start=tokens[start].start,
                    char_end=tokens[end - 1].end,
                    entity_type=entity.entity_type,
                    titles=_titles_before(text, tokens, start, params),
                    known=True,
                )
            )

    candidates.sort(key=lambda m: (m.start, -(m.end - m.start), not m.known))
    mentions = []
    taken_until = 0
    for mention in candidates:
        if mention.start >= taken_until:
            mentions.append(mention)
            taken_until = mention.end
    return mentions
