"""categorize_text tool implementation."""

from __future__ import annotations

from newsdesk_mcp.core.catdsl import evaluate
from newsdesk_mcp.core.resources import known_languages
from newsdesk_mcp.core.text import words
from newsdesk_mcp.tools.snapshot import get_snapshot


def categorize_text(text: str, language: str = "en") -> dict:
    """Categories whose definitions match a piece of text.

    Args:
        text: 분류할 텍스트
        language: ISO-639-1 언어 코드

    Returns:
        결과 dict (status, categories, countries, matches)
    """
    if language not in known_languages():
        return {
            "status": "error",
            "error_type": "unknown_language",
            "message": f"알 수 없는 언어 코드입니다: {language}",
        }
    snapshot = get_snapshot()
    offsets = snapshot.matcher.term_offsets(words(text))
    matches = {}
    countries = set()
    for definition in snapshot.definitions:
        result = evaluate(definition, offsets)
        if result.matched:
            matches[definition.category_id] = result.model_dump(mode="json")
            if definition.country:
                countries.add(definition.country)
    return {
        "status": "success",
        "language": language,
        "categories": sorted(matches),
        "countries": sorted(countries),
        "matches": matches,
    }
