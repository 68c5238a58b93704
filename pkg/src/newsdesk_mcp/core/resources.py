"""Access to the linguistic resource tables shipped with the package."""

from __future__ import annotations

import logging
from functools import lru_cache
from pathlib import Path

from newsdesk_mcp.errors import ResourceError

logger = logging.getLogger(__name__)

RESOURCE_DIR = Path(__file__).resolve().parents[1] / "resources"


def resolve(path: str | Path | None, default: str) -> Path:
    """Resolve a configured resource path; ``None`` means the shipped default."""
    if path is None:
        return RESOURCE_DIR / default
    return Path(path)


def read_lines(path: str | Path) -> list[str]:
    """Non-empty lines of a text table with ``#`` comments removed."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ResourceError(f"Cannot read resource {path}: {e}") from e
    lines = []
    for raw in text.splitlines():
        if raw.lstrip().startswith("#"):
            continue
        line = raw.strip()
        if line:
            lines.append(line)
    return lines


def read_tsv(path: str | Path, columns: int) -> list[list[str]]:
    """Rows of a tab-separated table, each with exactly ``columns`` fields."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ResourceError(f"Cannot read resource {path}: {e}") from e
    rows = []
    for number, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.startswith("#"):
            continue
        fields = raw.rstrip("\r\n").split("\t")
        if len(fields) != columns:
            raise ResourceError(
                f"{path}:{number}: expected {columns} tab-separated fields, got {len(fields)}"
            )
        rows.append([field.strip() for field in fields])
    return rows


@lru_cache(maxsize=1)
def known_languages() -> frozenset[str]:
    """ISO-639-1 codes accepted for sources and resources."""
    return frozenset(code.lower() for code in read_lines(RESOURCE_DIR / "codes" / "languages.txt"))


@lru_cache(maxsize=1)
def known_countries() -> frozenset[str]:
    """ISO-3166 alpha-2 codes accepted for sources, gazetteer and categories."""
    return frozenset(code.upper() for code in read_lines(RESOURCE_DIR / "codes" / "countries.txt"))
