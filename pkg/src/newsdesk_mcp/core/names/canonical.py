"""Spelling normalization, vowel-free canonical forms and edit distance."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from rapidfuzz.distance import Levenshtein
from unidecode import unidecode

from newsdesk_mcp.core.resources import read_tsv, resolve
from newsdesk_mcp.errors import ResourceError

_VOWELS = re.compile(r"[aeiou]")
_SPACES = re.compile(r"\s+")
_MAX_PASSES = 10


@dataclass(frozen=True)
class NormRules:
    """Ordered rewrite rules; ``@`` directives run before the regex rules."""

    fold_diacritics: bool = True
    lowercase: bool = True
    rules: tuple[tuple[re.Pattern[str], str], ...] = ()

    def apply(self, name: str) -> str:
        text = name
        if self.fold_diacritics:
            text = unidecode(text)
        if self.lowercase:
            text = text.lower()
        for pattern, replacement in self.rules:
            text = pattern.sub(replacement, text)
        return _SPACES.sub(" ", text).strip()


def load_rules(directory: str | Path | None = None) -> NormRules:
    """Read ``normrules.tsv``: directive lines and pattern/replacement rows."""
    path = resolve(directory, "names") / "normrules.tsv"
    fold = lower = False
    rules = []
    for number, row in enumerate(read_tsv(path, 2), start=1):
        pattern, replacement = row
        if pattern.startswith("@"):
            if pattern == "@fold_diacritics":
                fold = replacement.lower() in ("1", "true", "yes", "on")
            elif pattern == "@lowercase":
                lower = replacement.lower() in ("1", "true", "yes", "on")
            else:
                raise ResourceError(f"{path}: unknown directive {pattern}")
            continue
        try:
            if len(replacement) >= 2 and replacement[0] == replacement[-1] == "\"":
                replacement = replacement[1:-1]
            rules.append((re.compile(pattern), replacement))
        except re.error as e:
            raise ResourceError(f"{path}: rule {number} {pattern!r}: {e}") from e
    return NormRules(fold_diacritics=fold, lowercase=lower, rules=tuple(rules))


def normalize(name: str, rules: NormRules) -> str:
    """One pass of the rewrite rules, vowels kept."""
    return rules.apply(name)


def canonicalize(name: str, rules: NormRules) -> str:
    """Rules then vowel removal, repeated until nothing changes."""
    current = name
    for _ in range(_MAX_PASSES):
        rewritten = _SPACES.sub(" ", _VOWELS.sub("", rules.apply(current))).strip()
        if rewritten == current:
            break
        current = rewritten
    return current


def levenshtein(a: str, b: str) -> int:
    return Levenshtein.distance(a, b)


def similarity(a: str, b: str) -> float:
    """``1 - distance / max length``; two empty strings are identical."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest
