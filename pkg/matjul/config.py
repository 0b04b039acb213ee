"""Runtime settings read from the environment (and an optional .env file).

Explicit arguments always win over the environment, the environment wins over
the defaults below.
"""
from dataclasses import dataclass, field
from typing import Optional
import os

from dotenv import load_dotenv

_FALSY = ("0", "", "false", "False")

DEFAULT_BUDGET = 1000
DEFAULT_MAX_PERIOD = 64
DEFAULT_BAND = 1e-3
DEFAULT_VERIFY_COUNT = 200

# cycle detection constants
CYCLE_TOL = 1e-9
ATTRACT_MARGIN = 1e-6

_dotenv_loaded = False


def _ensure_dotenv() -> None:
    global _dotenv_loaded
    if not _dotenv_loaded:
        load_dotenv(override=False)
        _dotenv_loaded = True


def env_flag(name: str, default: str = "0") -> bool:
    return os.environ.get(name, default) not in _FALSY


def _env_number(name: str, cast, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw)
    except ValueError:
        raise ValueError(f"environment variable {name} has invalid value {raw!r}")


@dataclass(frozen=True)
class ClassifyParams:
    """Budgets and bands used by eigenvalue and matrix classification."""

    max_iter: int = DEFAULT_BUDGET
    max_period: int = DEFAULT_MAX_PERIOD
    cycle_tol: float = CYCLE_TOL
    attract_margin: float = ATTRACT_MARGIN
    julia_band: float = DEFAULT_BAND

    def __post_init__(self):
        if self.max_iter <= 0 or self.max_period <= 0:
            raise ValueError("budgets must be positive")
        if self.julia_band < 0:
            raise ValueError("julia_band must be non-negative")

    def to_dict(self) -> dict:
        return {
            "max_iter": self.max_iter,
            "max_period": self.max_period,
            "cycle_tol": self.cycle_tol,
            "attract_margin": self.attract_margin,
            "julia_band": self.julia_band,
        }


@dataclass(frozen=True)
class Settings:
    jobs: int = 1
    budget: int = DEFAULT_BUDGET
    max_period: int = DEFAULT_MAX_PERIOD
    band: float = DEFAULT_BAND
    verify_count: int = DEFAULT_VERIFY_COUNT
    log_level: str = "WARNING"
    params: ClassifyParams = field(default_factory=ClassifyParams)


def load_settings(
    jobs: Optional[int] = None,
    budget: Optional[int] = None,
    max_period: Optional[int] = None,
    band: Optional[float] = None,
    verify_count: Optional[int] = None,
    log_level: Optional[str] = None,
) -> Settings:
    _ensure_dotenv()
    if jobs is None:
        jobs = _env_number("MATJUL_JOBS", int, 1)
    if budget is None:
        budget = _env_number("MATJUL_BUDGET", int, DEFAULT_BUDGET)
    if max_period is None:
        max_period = _env_number("MATJUL_MAX_PERIOD", int, DEFAULT_MAX_PERIOD)
    if band is None:
        band = _env_number("MATJUL_BAND", float, DEFAULT_BAND)
    if verify_count is None:
        verify_count = _env_number("MATJUL_VERIFY_COUNT", int, DEFAULT_VERIFY_COUNT)
    if log_level is None:
        log_level = os.environ.get("MATJUL_LOG_LEVEL", "WARNING")
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    if verify_count < 0:
        raise ValueError("verify count must be non-negative")
    params = ClassifyParams(max_iter=budget, max_period=max_period, julia_band=band)
    return Settings(
        jobs=jobs,
        budget=budget,
        max_period=max_period,
        band=band,
        verify_count=verify_count,
        log_level=log_level.upper(),
        params=params,
    )
