"""current_alerts and link_edges tool implementations."""

from __future__ import annotations

from datetime import date

from newsdesk_mcp.errors import NotFoundError
from newsdesk_mcp.tools.snapshot import get_snapshot, not_found


def current_alerts() -> dict:
    """Alerts and breaking-news flags of the latest round.

    Returns:
        결과 dict (status, round_at, alerts, breaking)
    """
    state = get_snapshot().state
    if not state.rounds:
        return {"status": "success", "round_at": None, "alerts": [], "breaking": []}
    latest = max(s.round_at for s in state.rounds.values())
    return {
        "status": "success",
        "round_at": latest.isoformat(),
        "alerts": [d.model_dump(mode="json") for d in state.alert_log if d.timestamp == latest],
        "breaking": [f.model_dump(mode="json") for f in state.breaking if f.round_at == latest],
    }


def link_edges(day: str) -> dict:
    """Cross-lingual link edges computed on one day.

    Args:
        day: ISO 날짜 (예: "2024-03-01")

    Returns:
        결과 dict (status, date, edges)
    """
    try:
        key = date.fromisoformat(day).isoformat()
    except ValueError:
        return {
            "status": "error",
            "error_type": "invalid_date",
            "message": f"날짜 형식이 올바르지 않습니다: {day} (YYYY-MM-DD)",
        }
    links = get_snapshot().state.links
    if key not in links:
        return not_found(NotFoundError(f"No link edges for {key}"))
    return {"status": "success", "date": key, "edges": [e.model_dump(mode="json") for e in links[key]]}
