"""get_entity_profile tool implementation."""

from __future__ import annotations

from newsdesk_mcp.core.xlink import fuse_entity_profile
from newsdesk_mcp.errors import NotFoundError
from newsdesk_mcp.tools.snapshot import get_snapshot, not_found


def get_entity_profile(entity_id: int) -> dict:
    """Fused cross-language profile of one entity.

    Args:
        entity_id: 엔티티 숫자 ID

    Returns:
        결과 dict (status, profile)
    """
    state = get_snapshot().state
    try:
        profile = fuse_entity_profile(
            entity_id,
            state.entities,
            state.cluster_languages(),
            state.quotes,
            state.chains.values(),
        )
    except NotFoundError as e:
        return not_found(e)
    return {"status": "success", "profile": profile.model_dump(mode="json")}
