import pytest

from src.config import (
    GuardsConfig,
    apply_guard_overrides,
    default_config,
    load_config,
    resolve_threads,
)
from src.errors import ConfigError


class TestLoadConfig:
    def test_shipped_file_matches_defaults(self):
        config = load_config()
        defaults = default_config()
        assert config.guards == defaults.guards
        assert config.sweeps == defaults.sweeps
        assert config.default_evaluator == "eulerian"
        assert config.reports.include_timings is False

    def test_partial_file(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("guards:\n  direct_max_edges: 12\nsweeps:\n  seed: 3\n")
        config = load_config(str(path))
        assert config.guards.direct_max_edges == 12
        assert config.guards.eulerian_max_vertices == 24
        assert config.sweeps.seed == 3

    def test_empty_file(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("")
        assert load_config(str(path)) == default_config()

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_config(str(tmp_path / "absent.yaml"))

    @pytest.mark.parametrize("text", [
        "guards:\n  direct_max_edge: 3\n",
        "reports:\n  output_format: xml\n",
        "default_evaluator: magic\n",
    ])
    def test_rejects_bad_values(self, tmp_path, text):
        path = tmp_path / "config.yaml"
        path.write_text(text)
        with pytest.raises(ConfigError):
            load_config(str(path))


class TestThreads:
    def test_precedence(self, monkeypatch):
        config = default_config()
        monkeypatch.setenv("PHI_THREADS", "3")
        assert resolve_threads(5, config) == 5
        assert resolve_threads(None, config) == 3
        monkeypatch.delenv("PHI_THREADS")
        assert resolve_threads(None, config) == 1

    def test_bad_environment_value(self, monkeypatch):
        monkeypatch.setenv("PHI_THREADS", "many")
        with pytest.raises(ConfigError):
            resolve_threads(None, default_config())

    def test_at_least_one(self, monkeypatch):
        monkeypatch.delenv("PHI_THREADS", raising=False)
        assert resolve_threads(0, default_config()) == 1


class TestGuardOverrides:
    def test_override(self):
        guards = apply_guard_overrides(GuardsConfig(), ["direct_max_edges=24"])
        assert guards.direct_max_edges == 24
        assert guards.components_max_edges == 20

    def test_no_overrides(self):
        assert apply_guard_overrides(GuardsConfig(), None) == GuardsConfig()

    @pytest.mark.parametrize("item", ["direct_max_edges", "nope=3", "direct_max_edges=x"])
    def test_bad_overrides(self, item):
        with pytest.raises(ConfigError):
            apply_guard_overrides(GuardsConfig(), [item])
