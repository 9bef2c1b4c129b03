import pytest

from src.config import Config


class TestConfig:
    """Test cases for environment-driven configuration"""

    def test_defaults(self, monkeypatch):
        for name in ("EDGECOL_NODE_BUDGET", "EDGECOL_THREADS", "EDGECOL_RETRY_CAP", "EDGECOL_SEED", "LOG_LEVEL",
                     "EDGECOL_OVERFULL_SUBSET_LIMIT"):
            monkeypatch.delenv(name, raising=False)
        config = Config()
        assert config.solver.node_budget == 10 ** 8
        assert config.solver.threads == 1
        assert config.solver.overfull_subset_limit == 14
        assert config.generator.retry_cap == 10 ** 4
        assert config.generator.default_seed == 0
        assert config.tractable.exhaustive_cds_limit == 12
        assert config.app.log_level == "WARNING"
        assert config.validate()

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("EDGECOL_NODE_BUDGET", "500")
        monkeypatch.setenv("EDGECOL_THREADS", "4")
        monkeypatch.setenv("LOG_LEVEL", "debug")
        config = Config()
        assert config.solver.node_budget == 500
        assert config.solver.threads == 4
        assert config.app.log_level == "DEBUG"

    @pytest.mark.parametrize("name, value, message", [
        ("EDGECOL_NODE_BUDGET", "0", "EDGECOL_NODE_BUDGET"),
        ("EDGECOL_THREADS", "-1", "EDGECOL_THREADS"),
        ("EDGECOL_RETRY_CAP", "0", "EDGECOL_RETRY_CAP"),
        ("EDGECOL_OVERFULL_SUBSET_LIMIT", "-1", "EDGECOL_OVERFULL_SUBSET_LIMIT"),
        ("LOG_LEVEL", "LOUD", "LOG_LEVEL"),
    ])
    def test_validate_rejects_bad_values(self, monkeypatch, name, value, message):
        monkeypatch.setenv(name, value)
        with pytest.raises(ValueError, match=message):
            Config().validate()
