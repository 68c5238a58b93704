"""Read-only snapshot of the last completed round shared by tools and routes."""

from __future__ import annotations

import logging
import os
import threading
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from newsdesk_mcp.config import load_config
from newsdesk_mcp.core.catdsl import CategoryMatcher, load_categories
from newsdesk_mcp.core.state import MonitorState, load_state
from newsdesk_mcp.errors import NotFoundError
from newsdesk_mcp.models.category import CategoryDefinition
from newsdesk_mcp.models.config import MonitorConfig

logger = logging.getLogger(__name__)

STATE_DIR_ENV = "NEWSDESK_STATE_DIR"
CONFIG_ENV = "NEWSDESK_CONFIG"


@dataclass(frozen=True)
class Snapshot:
    state: MonitorState
    config: MonitorConfig
    state_dir: Path

    @cached_property
    def definitions(self) -> list[CategoryDefinition]:
        return load_categories(self.config.categories.directory)

    @cached_property
    def matcher(self) -> CategoryMatcher:
        return CategoryMatcher(self.definitions)


_lock = threading.Lock()
_current: Snapshot | None = None


def load_snapshot(state_dir: str | Path | None = None, config: MonitorConfig | None = None) -> Snapshot:
    """Load config and state; the environment may point at other locations."""
    config = config or load_config(os.environ.get(CONFIG_ENV))
    state_dir = Path(state_dir or os.environ.get(STATE_DIR_ENV) or config.paths.state_dir)
    snapshot = Snapshot(state=load_state(state_dir), config=config, state_dir=state_dir)
    logger.info(f"Loaded snapshot from {state_dir} ({len(snapshot.state.rounds)} languages)")
    return snapshot


def get_snapshot() -> Snapshot:
    global _current
    with _lock:
        if _current is None:
            _current = load_snapshot()
        return _current


def set_snapshot(snapshot: Snapshot | None) -> None:
    """Swap in a new snapshot; None forces a reload on next access."""
    global _current
    with _lock:
        _current = snapshot


def not_found(error: NotFoundError) -> dict:
    return {
        "status": "not_found",
        "error_type": type(error).__name__,
        "message": str(error),
    }
