"""Monitor configuration loader."""

from __future__ import annotations

import logging
import os
from pathlib import Path

import yaml
from pydantic import ValidationError

from newsdesk_mcp.errors import ConfigError
from newsdesk_mcp.models.config import MonitorConfig

logger = logging.getLogger(__name__)

# Default config path: project_root/config/newsdesk_config.yaml
_CONFIG_SEARCH_PATHS = [
    Path(__file__).resolve().parents[2] / "config" / "newsdesk_config.yaml",
    Path("config") / "newsdesk_config.yaml",
]

_SECTION = "newsdesk"


def find_config(config_path: str | None = None) -> Path | None:
    """Return the config file that ``load_config`` would read, if any."""
    if config_path:
        if not os.path.isfile(config_path):
            raise ConfigError(f"Config file not found: {config_path}")
        return Path(config_path)
    for p in _CONFIG_SEARCH_PATHS:
        if p.is_file():
            return p
    return None


def load_config(config_path: str | None = None) -> MonitorConfig:
    """Load the monitor config, falling back to defaults."""
    path = find_config(config_path)
    if path is None:
        logger.info("No config file found, using defaults")
        return MonitorConfig()

    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"Cannot read config {path}: {e}") from e

    section = (data or {}).get(_SECTION) if isinstance(data, dict) else None
    if data and section is None:
        raise ConfigError(f"{path}: missing top-level '{_SECTION}:' section")
    return config_from_dict(section or {}, source=str(path))


def config_from_dict(values: dict, source: str = "<dict>") -> MonitorConfig:
    """Validate a mapping into a ``MonitorConfig``, naming the offending key on error."""
    try:
        return MonitorConfig.model_validate(values)
    except ValidationError as e:
        problems = []
        for err in e.errors():
            key = ".".join(str(part) for part in err["loc"])
            problems.append(f"{key}: {err['msg']}")
        raise ConfigError(f"{source}: invalid config: " + "; ".join(problems)) from e
