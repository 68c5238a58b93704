"""Term and category matching over article tokens."""

from __future__ import annotations

import bisect
import logging
import math
import re
from collections.abc import Iterable, Sequence
from functools import lru_cache

import ahocorasick

from newsdesk_mcp.core.text import words
from newsdesk_mcp.models.article import Article
from newsdesk_mcp.models.category import (
    AndNode,
    CategoryDefinition,
    DefinitionMode,
    MatchResult,
    NearNode,
    NotNode,
    OrNode,
    Term,
    TermHit,
    TermNode,
)

logger = logging.getLogger(__name__)

_PATTERN_WORD = re.compile(r"(?:[^\W_]|[_%])+")
_SEP = "\x00"


def pattern_words(pattern: str) -> list[str]:
    """Split a term pattern into word patterns the way article text is tokenized."""
    return _PATTERN_WORD.findall(pattern)


def _char_regex(ch: str) -> str:
    if ch == "_":
        return "."
    if ch == "%":
        return ".*"
    upper = ch.upper()
    if ch != upper and len(upper) == 1:
        return f"(?:{re.escape(ch)}|{re.escape(upper)})"
    return re.escape(ch)


@lru_cache(maxsize=4096)
def compile_word(word: str) -> re.Pattern[str]:
    """Regex for one word pattern.

    Lowercase letters match both cases, uppercase letters only themselves,
    ``_`` one character and ``%`` any run.
    """
    return re.compile("".join(_char_regex(ch) for ch in word), re.DOTALL)


class CompiledTerm:
    """A term ready to be matched against token sequences."""

    __slots__ = ("term", "regexes", "prefix")

    def __init__(self, term: Term) -> None:
        self.term = term
        parts = pattern_words(term.pattern)
        if not parts:
            parts = [term.pattern]
        self.regexes = [compile_word(w) for w in parts]
        self.prefix = _literal_prefix(parts[0])

    def matches_at(self, tokens: Sequence[str], i: int) -> bool:
        if i + len(self.regexes) > len(tokens):
            return False
        return all(rx.fullmatch(tokens[i + j]) for j, rx in enumerate(self.regexes))

    def offsets(self, tokens: Sequence[str]) -> list[int]:
        return [i for i in range(len(tokens)) if self.matches_at(tokens, i)]


def _literal_prefix(word: str) -> str | None:
    """Lowercased literal head of a word pattern, or None when it cannot prefilter."""
    head = []
    for ch in word:
        if ch in "_%":
            break
        if ch.upper().lower() != ch.lower() or len(ch.lower()) != 1:
            return None
        head.append(ch.lower())
    return "".join(head) or None


def match_term(term: Term, tokens: Sequence[str]) -> list[int]:
    """Token offsets where ``term`` matches whole tokens."""
    return CompiledTerm(term).offsets(tokens)


class CategoryMatcher:
    """Matches a fixed set of definitions against articles.

    All literal term prefixes share one Aho-Corasick automaton over the
    lowercased token stream; every candidate it yields is confirmed by the
    per-term regexes, so results equal plain per-term matching.
    """

    def __init__(self, definitions: Iterable[CategoryDefinition]) -> None:
        self.definitions = sorted(definitions, key=lambda d: d.category_id)
        self._terms: dict[str, CompiledTerm] = {}
        for definition in self.definitions:
            for term in definition.all_terms():
                if term.pattern not in self._terms:
                    self._terms[term.pattern] = CompiledTerm(term)

        self._scan_all: list[str] = []
        by_prefix: dict[str, list[str]] = {}
        for pattern, compiled in self._terms.items():
            if compiled.prefix is None:
                self._scan_all.append(pattern)
            else:
                by_prefix.setdefault(compiled.prefix, []).append(pattern)

        self._automaton = None
        if by_prefix:
            automaton = ahocorasick.Automaton()
            for prefix, patterns in by_prefix.items():
                automaton.add_word(_SEP + prefix, (len(prefix) + 1, tuple(patterns)))
            automaton.make_automaton()
            self._automaton = automaton
        logger.info(
            f"Category matcher: {len(self.definitions)} definitions, {len(self._terms)} terms, "
            f"{len(by_prefix)} prefixes, {len(self._scan_all)} unanchored"
        )

    def term_offsets(self, tokens: Sequence[str]) -> dict[str, list[int]]:
        """Offsets of every term that occurs in ``tokens``."""
        hits: dict[str, set[int]] = {}
        if self._automaton is not None and tokens:
            lowered = [t.lower() for t in tokens]
            starts = []
            pos = 0
            for tok in lowered:
                starts.append(pos)
                pos += len(tok) + 1
            text = _SEP + _SEP.join(lowered)
            for end, (length, patterns) in self._automaton.iter(text):
                index = bisect.bisect_left(starts, end - length + 1)
                if index >= len(starts) or starts[index] != end - length + 1:
                    continue
                for pattern in patterns:
                    if self._terms[pattern].matches_at(tokens, index):
                        hits.setdefault(pattern, set()).add(index)
        for pattern in self._scan_all:
            found = self._terms[pattern].offsets(tokens)
            if found:
                hits.setdefault(pattern, set()).update(found)
        return {pattern: sorted(offsets) for pattern, offsets in hits.items()}

    def match(self, definition: CategoryDefinition, tokens: Sequence[str]) -> MatchResult:
        return evaluate(definition, self.term_offsets(tokens))

    def classify(self, tokens: Sequence[str]) -> set[str]:
        offsets = self.term_offsets(tokens)
        return {d.category_id for d in self.definitions if evaluate(d, offsets).matched}

    def classify_article(self, article: Article) -> set[str]:
        return self.classify(words(article.text))


def evaluate(definition: CategoryDefinition, offsets: dict[str, list[int]]) -> MatchResult:
    """Evaluate a definition given the offsets of its matched terms."""
    if definition.mode == DefinitionMode.WEIGHTED:
        matched_terms = [t for t in definition.terms if offsets.get(t.pattern)]
        score = math.fsum(t.weight for t in matched_terms)
        hits = [TermHit(term=t.pattern, offset=offsets[t.pattern][0]) for t in matched_terms]
        return MatchResult(matched=score >= definition.threshold, matched_terms=hits, score=score)

    ok, hits = _eval_node(definition.expression, offsets)
    if not ok or not hits:
        return MatchResult(matched=False)
    unique = sorted({(h.offset, h.term) for h in hits})
    return MatchResult(matched=True, matched_terms=[TermHit(term=t, offset=o) for o, t in unique])


def _eval_node(node, offsets: dict[str, list[int]]) -> tuple[bool, list[TermHit]]:
    if isinstance(node, TermNode):
        found = offsets.get(node.term.pattern, [])
        return bool(found), [TermHit(term=node.term.pattern, offset=o) for o in found]
    if isinstance(node, NotNode):
        ok, _ = _eval_node(node.child, offsets)
        return not ok, []
    if isinstance(node, AndNode):
        hits: list[TermHit] = []
        for child in node.children:
            ok, child_hits = _eval_node(child, offsets)
            if not ok:
                return False, []
            hits.extend(child_hits)
        return True, hits
    if isinstance(node, OrNode):
        matched = False
        hits = []
        for child in node.children:
            ok, child_hits = _eval_node(child, offsets)
            if ok:
                matched = True
                hits.extend(child_hits)
        return matched, hits
    if isinstance(node, NearNode):
        left = offsets.get(node.left.pattern, [])
        right = offsets.get(node.right.pattern, [])
        hits = []
        for a in left:
            lo = bisect.bisect_left(right, a - node.k)
            hi = bisect.bisect_right(right, a + node.k)
            near = right[lo:hi]
            if node.left.pattern == node.right.pattern:
                near = [b for b in near if b != a]
            if near:
                hits.append(TermHit(term=node.left.pattern, offset=a))
                hits.extend(TermHit(term=node.right.pattern, offset=b) for b in near)
        return bool(hits), hits
    raise TypeError(f"Unknown node type: {type(node).__name__}")


def match_category(definition: CategoryDefinition, article: Article) -> MatchResult:
    """Match one definition against one article."""
    return CategoryMatcher([definition]).match(definition, words(article.text))


def classify_all(definitions: Iterable[CategoryDefinition], article: Article) -> set[str]:
    """Ids of every category the article satisfies."""
    definitions = list(definitions)
    if not definitions:
        return set()
    return CategoryMatcher(definitions).classify_article(article)
