"""
Tests for settings validation and seed derivation
"""
import pytest

from modules.config.exceptions import ConfigError
from modules.config.settings import Settings, settings
from modules.config.utils import derive_seed, derive_rng, dump_json_document

class TestSettings:
    def test_defaults_are_valid(self):
        settings.validate()

    def test_out_of_range_value(self, monkeypatch):
        monkeypatch.setattr(Settings, "GB_LEARNING_RATE", 0.0)
        with pytest.raises(ConfigError):
            Settings.validate()

    def test_unknown_log_level(self, monkeypatch):
        monkeypatch.setattr(Settings, "LOG_LEVEL", "LOUD")
        with pytest.raises(ConfigError):
            Settings.validate()

class TestSeeds:
    def test_derivation_is_deterministic(self):
        assert derive_seed(3, 1, 2) == derive_seed(3, 1, 2)
        assert derive_rng(3, 4).random() == derive_rng(3, 4).random()

    def test_keys_give_distinct_streams(self):
        seeds = {derive_seed(0, a, r) for a in range(5) for r in range(20)}
        assert len(seeds) == 100
        assert derive_seed(0, 1, 2) != derive_seed(0, 2, 1)

    def test_documents_are_stable(self):
        assert dump_json_document({"b": 1, "a": [1.5]}) == '{\n  "a": [\n    1.5\n  ],\n  "b": 1\n}\n'

class TestPackageExports:
    def test_every_public_name_resolves(self):
        import modules.config as config
        for name in config.__all__:
            assert getattr(config, name) is not None

    def test_helpers_are_the_module_functions(self):
        import modules.config as config
        from modules.config import utils
        assert config.derive_seed is utils.derive_seed
        assert config.save_json_document is utils.save_json_document
        assert not hasattr(config, "np")
