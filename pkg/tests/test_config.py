"""
Configuration tests - defaults, YAML file and environment overrides
"""

import pytest

from polytraj_ccd.config import Config
from polytraj_ccd.core.errors import ConfigurationError


class TestConfig:
    """Config loading"""

    def setup_method(self):
        self.missing = "/nonexistent/ccd.yaml"

    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("CCD_THREADS", raising=False)
        monkeypatch.delenv("CCD_LOG_LEVEL", raising=False)
        cfg = Config(self.missing)
        assert cfg.threads == 1
        assert cfg.log_level == "INFO"
        assert cfg.get_check_config().t_min == pytest.approx(0.002)
        assert cfg.get_input_bounds().f_max == pytest.approx(30.0)
        assert cfg.oracle_dt == pytest.approx(1e-4)

    def test_yaml_override(self, tmp_path, monkeypatch):
        monkeypatch.delenv("CCD_THREADS", raising=False)
        path = tmp_path / "ccd.yaml"
        path.write_text(
            "threads: 3\n"
            "checking:\n  t_min: 0.01\n"
            "benchmarks:\n  forest:\n    batch_size: 10\n",
            encoding="utf-8",
        )
        cfg = Config(str(path))
        assert cfg.threads == 3
        assert cfg.get_check_config().t_min == pytest.approx(0.01)
        forest = cfg.get_benchmark("forest")
        assert forest["batch_size"] == 10
        assert forest["duration"] == [0.5, 2.0]

    def test_env_override(self, tmp_path, monkeypatch):
        path = tmp_path / "ccd.yaml"
        path.write_text("threads: 3\nlogging:\n  level: WARNING\n", encoding="utf-8")
        monkeypatch.setenv("CCD_THREADS", "5")
        monkeypatch.setenv("CCD_LOG_LEVEL", "DEBUG")
        cfg = Config(str(path))
        assert cfg.threads == 5
        assert cfg.log_level == "DEBUG"

    def test_bad_env_threads_ignored(self, monkeypatch):
        monkeypatch.setenv("CCD_THREADS", "lots")
        assert Config(self.missing).threads == 1

    def test_malformed_yaml_keeps_defaults(self, tmp_path, monkeypatch):
        monkeypatch.delenv("CCD_THREADS", raising=False)
        path = tmp_path / "ccd.yaml"
        path.write_text("checking: [unclosed\n", encoding="utf-8")
        cfg = Config(str(path))
        assert cfg.get_check_config().t_min == pytest.approx(0.002)

    def test_cli_override_wins(self):
        cfg = Config(self.missing)
        assert cfg.get_check_config(t_min=0.05).t_min == pytest.approx(0.05)
        assert cfg.get_check_config(t_min=None).t_min == pytest.approx(0.002)

    def test_invalid_t_min(self):
        with pytest.raises(ConfigurationError):
            Config(self.missing).get_check_config(t_min=0.0)

    def test_invalid_bounds(self, tmp_path):
        path = tmp_path / "ccd.yaml"
        path.write_text("input_bounds:\n  gravity: [0, 0]\n", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            Config(str(path)).get_input_bounds()

    def test_unknown_benchmark(self):
        with pytest.raises(ConfigurationError):
            Config(self.missing).get_benchmark("maze")

    def test_benchmark_is_a_copy(self):
        cfg = Config(self.missing)
        cfg.get_benchmark("avoidance")["budget_ms"] = -1
        assert cfg.get_benchmark("avoidance")["budget_ms"] == pytest.approx(15.0)
