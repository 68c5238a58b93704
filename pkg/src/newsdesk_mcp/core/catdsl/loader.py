"""Loading category definition files."""

from __future__ import annotations

import logging
from pathlib import Path

from newsdesk_mcp.core.catdsl.grammar import parse_definition
from newsdesk_mcp.core.resources import known_countries, resolve
from newsdesk_mcp.errors import DefinitionError, DefinitionSyntaxError
from newsdesk_mcp.models.category import CategoryDefinition

logger = logging.getLogger(__name__)

SUFFIX = ".cat"


def load_definition(path: str | Path) -> CategoryDefinition:
    """Parse one definition file; the file stem is the category id."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DefinitionError(f"Cannot read category file {path}: {e}") from e
    try:
        definition = parse_definition(text, category_id=path.stem)
    except DefinitionSyntaxError as e:
        raise DefinitionSyntaxError(f"{path.name}: {e.message}", line=e.line, column=e.column) from e
    if definition.country is not None and definition.country not in known_countries():
        raise DefinitionError(f"{path.name}: unknown country code {definition.country!r}")
    return definition


def load_categories(directory: str | Path | None = None) -> list[CategoryDefinition]:
    """All definitions of a directory, sorted by category id."""
    root = resolve(directory, "categories")
    if not root.is_dir():
        raise DefinitionError(f"Category directory not found: {root}")
    definitions = [load_definition(p) for p in sorted(root.glob(f"*{SUFFIX}"))]
    logger.info(f"Loaded {len(definitions)} category definitions from {root}")
    return definitions
