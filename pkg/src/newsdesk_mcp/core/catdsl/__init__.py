"""Category definition language: parser, matcher and file loader."""

from newsdesk_mcp.core.catdsl.grammar import (
    format_definition,
    format_expression,
    parse_definition,
    parse_expression,
)
from newsdesk_mcp.core.catdsl.loader import load_categories, load_definition
from newsdesk_mcp.core.catdsl.matcher import (
    CategoryMatcher,
    classify_all,
    evaluate,
    match_category,
    match_term,
)

__all__ = [
    "CategoryMatcher",
    "classify_all",
    "evaluate",
    "format_definition",
    "format_expression",
    "load_categories",
    "load_definition",
    "match_category",
    "match_term",
    "parse_definition",
    "parse_expression",
]
