import os
from dotenv import load_dotenv

from utils.errors import ConfigError

load_dotenv()


def _float_env(name: str, default: float) -> float:
    value = os.getenv(name, "").strip()
    if not value:
        return default
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{name} must be a number, got {value!r}")


def _int_env(name: str, default: int) -> int:
    value = os.getenv(name, "").strip()
    if not value:
        return default
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {value!r}")


def get_default_tolerance() -> float:
    tol = _float_env("QGABOR_TOL", 1e-9)
    if tol <= 0:
        raise ConfigError(f"QGABOR_TOL must be positive, got {tol}")
    return tol


def get_max_radius() -> int:
    radius = _int_env("QGABOR_MAX_RADIUS", 8)
    if radius < 1:
        raise ConfigError(f"QGABOR_MAX_RADIUS must be at least 1, got {radius}")
    return radius


def get_default_trials() -> int:
    return _int_env("QGABOR_TRIALS", 20)


def get_default_seed() -> int:
    return _int_env("QGABOR_SEED", 0)


def get_log_level() -> str:
    return os.getenv("QGABOR_LOG_LEVEL", "WARNING").strip().upper() or "WARNING"


def is_strict_mode() -> bool:
    value = os.getenv("QGABOR_STRICT", "1").strip().lower()
    return value in {"1", "true", "yes", "on"}


def resolve_tolerance(tol: float = None) -> float:
    """An explicit tolerance wins over QGABOR_TOL."""
    if tol is None:
        return get_default_tolerance()
    if tol <= 0:
        raise ConfigError(f"tolerance must be positive, got {tol}")
    return float(tol)
