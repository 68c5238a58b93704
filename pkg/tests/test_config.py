"""Tests for configuration loading."""

import pytest

from newsdesk_mcp.config import config_from_dict, find_config, load_config
from newsdesk_mcp.errors import ConfigError
from newsdesk_mcp.models.config import AlertSettings, MonitorConfig


class TestLoadConfig:
    def test_shipped_config_matches_defaults(self):
        assert find_config() is not None
        assert load_config().model_dump() == MonitorConfig().model_dump()

    def test_overrides(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("newsdesk:\n  cluster:\n    threshold: 0.6\n  alerts:\n    ratio: 3\n", encoding="utf-8")
        config = load_config(str(path))
        assert config.cluster.threshold == 0.6
        assert config.alerts.ratio == 3.0
        assert config.cluster.window_hours == 4.0

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_config(str(tmp_path / "missing.yaml"))

    def test_missing_section(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("cluster:\n  threshold: 0.6\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="newsdesk"):
            load_config(str(path))

    def test_empty_file_is_defaults(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("", encoding="utf-8")
        assert load_config(str(path)).model_dump() == MonitorConfig().model_dump()

    def test_bad_yaml(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("newsdesk: [unclosed\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="Cannot read"):
            load_config(str(path))


class TestValidation:
    def test_unknown_key_is_named(self):
        with pytest.raises(ConfigError, match="cluster.treshold"):
            config_from_dict({"cluster": {"treshold": 0.6}})

    def test_out_of_range(self):
        with pytest.raises(ConfigError, match="cluster.threshold"):
            config_from_dict({"cluster": {"threshold": 1.5}})

    def test_link_weights_must_sum_to_one(self):
        with pytest.raises(ConfigError, match="sum to 1"):
            config_from_dict({"link": {"weights": {"subject": 0.5, "country": 0.5, "entity": 0.5, "keyword": 0.0}}})

    def test_level_buckets_ascending(self):
        with pytest.raises(ValueError):
            AlertSettings(level_buckets=[4, 2])
