"""Table-driven transliteration of non-Latin names."""

from __future__ import annotations

import logging
import unicodedata
from pathlib import Path

from newsdesk_mcp.core.resources import read_tsv, resolve

logger = logging.getLogger(__name__)

SCRIPTS = ("cyrillic", "greek")


class Transliterator:
    """Character table lookups; lowercase keys serve both cases."""

    def __init__(self, table: dict[str, str]) -> None:
        self.table = {k.lower(): v for k, v in table.items()}

    def transliterate(self, text: str) -> str:
        out = []
        for ch in text:
            if ch.isascii() or not ch.isalpha() or _is_latin(ch):
                out.append(ch)
                continue
            lower = ch.lower()
            mapped = self.table.get(lower)
            if mapped is None:
                logger.warning(f"No transliteration for {ch!r} (U+{ord(ch):04X}), kept as is")
                out.append(ch)
            elif ch != lower:
                out.append(mapped[:1].upper() + mapped[1:])
            else:
                out.append(mapped)
        return "".join(out)


def _is_latin(ch: str) -> bool:
    return unicodedata.name(ch, "").startswith("LATIN")


def load_transliterator(directory: str | Path | None = None, scripts=SCRIPTS) -> Transliterator:
    """Merge the shipped ``translit_<script>.tsv`` tables."""
    root = resolve(directory, "names")
    table: dict[str, str] = {}
    for script in scripts:
        path = root / f"translit_{script}.tsv"
        if path.is_file():
            for source, latin in read_tsv(path, 2):
                table[source] = latin
    return Transliterator(table)


def transliterate(name: str, transliterator: Transliterator) -> str:
    return transliterator.transliterate(name)
