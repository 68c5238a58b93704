"""Word segmentation shared by every text stage."""

from __future__ import annotations

import re
from collections import Counter
from typing import NamedTuple

# Letters and digits; everything else (punctuation, underscore, space) separates words.
_WORD = re.compile(r"[^\W_]+")


class Token(NamedTuple):
    text: str
    start: int
    end: int


def tokenize(text: str) -> list[Token]:
    """Tokens with character offsets into ``text``."""
    return [Token(m.group(), m.start(), m.end()) for m in _WORD.finditer(text)]


def words(text: str) -> list[str]:
    return _WORD.findall(text)


def term_counts(text: str) -> Counter[str]:
    """Lowercased word frequencies."""
    return Counter(w.lower() for w in _WORD.findall(text))
