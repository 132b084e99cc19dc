import pytest

from utils import config
from utils.errors import ConfigError


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("QGABOR_TOL", "QGABOR_MAX_RADIUS", "QGABOR_TRIALS", "QGABOR_SEED",
                 "QGABOR_LOG_LEVEL", "QGABOR_STRICT"):
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    assert config.get_default_tolerance() == 1e-9
    assert config.get_max_radius() == 8
    assert config.get_default_trials() == 20
    assert config.get_default_seed() == 0
    assert config.get_log_level() == "WARNING"
    assert config.is_strict_mode()


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("QGABOR_TOL", "1e-6")
    monkeypatch.setenv("QGABOR_MAX_RADIUS", "3")
    monkeypatch.setenv("QGABOR_SEED", "42")
    monkeypatch.setenv("QGABOR_LOG_LEVEL", "debug")
    monkeypatch.setenv("QGABOR_STRICT", "off")
    assert config.get_default_tolerance() == 1e-6
    assert config.get_max_radius() == 3
    assert config.get_default_seed() == 42
    assert config.get_log_level() == "DEBUG"
    assert not config.is_strict_mode()


@pytest.mark.parametrize("name,value,getter", [
    ("QGABOR_TOL", "tiny", config.get_default_tolerance),
    ("QGABOR_TOL", "-1", config.get_default_tolerance),
    ("QGABOR_MAX_RADIUS", "0", config.get_max_radius),
    ("QGABOR_TRIALS", "many", config.get_default_trials),
])
def test_bad_values(monkeypatch, name, value, getter):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError):
        getter()


def test_resolve_tolerance(monkeypatch):
    monkeypatch.setenv("QGABOR_TOL", "1e-5")
    assert config.resolve_tolerance() == 1e-5
    assert config.resolve_tolerance(1e-3) == 1e-3
    with pytest.raises(ConfigError):
        config.resolve_tolerance(0.0)
