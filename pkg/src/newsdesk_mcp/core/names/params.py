"""Per-language name and quotation parameters (``params_<lang>.txt``)."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from newsdesk_mcp.core.resources import read_lines, resolve
from newsdesk_mcp.errors import ResourceError

_SECTIONS = ("titles", "reporting_verbs", "that", "stopwords", "org_suffixes")


@dataclass(frozen=True)
class LanguageParams:
    language: str
    titles: frozenset[str] = field(default_factory=frozenset)
    reporting_verbs: tuple[str, ...] = ()
    that: frozenset[str] = field(default_factory=frozenset)
    stopwords: frozenset[str] = field(default_factory=frozenset)
    org_suffixes: frozenset[str] = field(default_factory=frozenset)


def load_params(language: str, directory: str | Path | None = None) -> LanguageParams:
    """Read ``[section]``-grouped word lists; a missing file gives empty lists."""
    path = resolve(directory, "names") / f"params_{language}.txt"
    if not path.is_file():
        return LanguageParams(language=language)
    sections: dict[str, list[str]] = {name: [] for name in _SECTIONS}
    current = None
    for line in read_lines(path):
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in sections:
                raise ResourceError(f"{path}: unknown section [{current}]")
            continue
        if current is None:
            raise ResourceError(f"{path}: entry {line!r} outside a section")
        sections[current].append(line)
    verbs = sorted(set(sections["reporting_verbs"]), key=lambda v: (-len(v), v))
    return LanguageParams(
        language=language,
        titles=frozenset(t.casefold() for t in sections["titles"]),
        reporting_verbs=tuple(verbs),
        that=frozenset(sections["that"]),
        stopwords=frozenset(w.casefold() for w in sections["stopwords"]),
        org_suffixes=frozenset(w.casefold() for w in sections["org_suffixes"]),
    )
