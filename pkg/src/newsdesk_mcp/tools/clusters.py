"""latest_clusters and get_story tool implementations."""

from __future__ import annotations

import json

from newsdesk_mcp.core.cluster import story_timeline
from newsdesk_mcp.core.state import clusters_json, clusters_rss
from newsdesk_mcp.errors import ClusterNotFoundError, StoryNotFoundError
from newsdesk_mcp.tools.snapshot import get_snapshot, not_found


def latest_clusters(language: str, format: str = "json") -> dict:
    """Top stories of the latest round of one language.

    Args:
        language: ISO-639-1 언어 코드 (예: "en")
        format: 출력 형식 ("json" 또는 "rss")

    Returns:
        결과 dict (status, language, round_at, clusters 또는 content)
    """
    if format not in ("json", "rss"):
        return {
            "status": "error",
            "error_type": "unsupported_format",
            "message": f"지원하지 않는 형식입니다: {format} (json 또는 rss)",
        }
    snapshot = get_snapshot().state.rounds.get(language)
    if snapshot is None:
        return not_found(ClusterNotFoundError(f"No clusters for language {language!r}"))

    result = {"status": "success", "language": language, "round_at": snapshot.round_at.isoformat()}
    if format == "rss":
        result["content"] = clusters_rss(snapshot).decode("utf-8")
    else:
        result["clusters"] = json.loads(clusters_json(snapshot))["clusters"]
    return result


def get_story(chain_id: str) -> dict:
    """A story chain with its daily timeline.

    Args:
        chain_id: 스토리(체인) ID

    Returns:
        결과 dict (status, story, timeline)
    """
    chains = get_snapshot().state.chains
    if chain_id not in chains:
        return not_found(StoryNotFoundError(f"Unknown story: {chain_id}"))
    chain = chains[chain_id]
    return {
        "status": "success",
        "story": chain.model_dump(mode="json"),
        "timeline": [p.model_dump(mode="json") for p in story_timeline(chain)],
    }
