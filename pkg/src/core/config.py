"""
Runtime configuration for the knots toolkit.

Settings are read from the environment (and a local .env file through
python-dotenv) into a typed pydantic model. Command-line flags are parsed into
a RunConfig, which validates exact phases and integer ranges.

Environment:
    KNOTS_CATALOG_PATH        extra catalog JSON merged over the bundled one
    KNOTS_LOG_LEVEL           root logging level (default INFO)
    KNOTS_GRID_FACTOR         oracle grid points per unit t, times q (4096)
    KNOTS_MATCH_TOL           oracle time-match tolerance (1e-9)
    KNOTS_REFINE_TOL          bisection residual target (1e-12)
    KNOTS_SEPARATION_GUARD    minimum strand separation accepted by verify (1e-6)
    KNOTS_JONES_MAX_STRANDS   strand limit of the Jones engine (8)
    KNOTS_METRICS_DIR         performance metrics directory (metrics)
    KNOTS_WORKERS             default scan worker threads (1)

Usage:
    from src.core.config import get_settings, parse_phase

    settings = get_settings()
    phase = parse_phase("1/8")
"""

import os
import re
import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Literal, Optional, Tuple

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from src.core.errors import ConfigError

load_dotenv()

logger = logging.getLogger(__name__)

_PHASE_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")
_RANGE_RE = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$")


class Settings(BaseModel):
    """
    Process-wide defaults taken from the environment.

    Attributes:
        catalog_path (str, optional): User catalog merged over the bundle
        log_level (str): Logging level name for main.py
        grid_factor (int): Oracle resolution is grid_factor * q points per unit t
        match_tol (float): Time tolerance for oracle/analytic matching
        refine_tol (float): Residual target of the bisection refinement
        separation_guard (float): Smallest strand separation verify accepts
        jones_max_strands (int): StrandLimit threshold of the Jones engine
        metrics_dir (str): Where PerformanceMonitor writes its exports
        workers (int): Default thread count for scans and sweeps
    """
    catalog_path: Optional[str] = None
    log_level: str = "INFO"
    grid_factor: int = Field(default=4096, ge=16)
    match_tol: float = Field(default=1e-9, gt=0)
    refine_tol: float = Field(default=1e-12, gt=0)
    separation_guard: float = Field(default=1e-6, gt=0)
    jones_max_strands: int = Field(default=8, ge=2)
    metrics_dir: str = "metrics"
    workers: int = Field(default=1, ge=1)

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        value = value.upper()
        if value not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log level {value}")
        return value


_ENV_KEYS = {
    "catalog_path": "KNOTS_CATALOG_PATH",
    "log_level": "KNOTS_LOG_LEVEL",
    "grid_factor": "KNOTS_GRID_FACTOR",
    "match_tol": "KNOTS_MATCH_TOL",
    "refine_tol": "KNOTS_REFINE_TOL",
    "separation_guard": "KNOTS_SEPARATION_GUARD",
    "jones_max_strands": "KNOTS_JONES_MAX_STRANDS",
    "metrics_dir": "KNOTS_METRICS_DIR",
    "workers": "KNOTS_WORKERS",
}


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Build Settings from the environment once per process."""
    values = {
        field: os.getenv(key)
        for field, key in _ENV_KEYS.items()
        if os.getenv(key) not in (None, "")
    }
    try:
        settings = Settings(**values)
    except ValidationError as e:
        raise ConfigError(f"invalid environment configuration: {e}") from e
    logger.debug(f"Settings loaded: {settings.model_dump()}")
    return settings


def reload_settings() -> Settings:
    get_settings.cache_clear()
    return get_settings()


def parse_phase(text: str) -> Fraction:
    """
    Parse an exact phase ("a/b" or an integer) into [0,1).

    Decimal input is rejected so phases stay exact.
    """
    match = _PHASE_RE.match(text or "")
    if not match:
        raise ConfigError(
            f"phase '{text}' must be an exact fraction a/b or an integer"
        )
    num, den = int(match.group(1)), int(match.group(2) or 1)
    if den == 0:
        raise ConfigError(f"phase '{text}' has a zero denominator")
    return Fraction(num, den) % 1


def parse_range(text: str) -> Tuple[int, int]:
    """Parse 'A..B' or a single integer into an inclusive (lo, hi) pair."""
    match = _RANGE_RE.match(text or "")
    if not match:
        raise ConfigError(f"range '{text}' must look like A..B or A")
    lo = int(match.group(1))
    hi = int(match.group(2)) if match.group(2) is not None else lo
    if hi < lo:
        raise ConfigError(f"range '{text}' is empty")
    return lo, hi


class RunConfig(BaseModel):
    """
    Validated command-line request.

    Attributes:
        command (str): Subcommand name
        N, p, q (int, optional): Single triple for braid/invariants/phases/verify
        n_range, p_range, q_range (tuple, optional): Inclusive scan/sweep ranges
        phase (Fraction, optional): Phase override in turns
        output_format (str): text, json or csv
        svg_path, catalog_path, report_path, metrics_path (str, optional)
        workers (int): Thread count for scans and sweeps
        invariants (bool): Run the invariant checks in sweeps
        match_tol, refine_tol (float): Oracle tolerances for verify
    """
    model_config = {"arbitrary_types_allowed": True}

    command: str
    N: Optional[int] = None
    p: Optional[int] = None
    q: Optional[int] = None
    n_range: Optional[Tuple[int, int]] = None
    p_range: Optional[Tuple[int, int]] = None
    q_range: Optional[Tuple[int, int]] = None
    phase: Optional[Fraction] = None
    output_format: Literal["text", "json", "csv"] = "text"
    svg_path: Optional[str] = None
    catalog_path: Optional[str] = None
    report_path: Optional[str] = None
    metrics_path: Optional[str] = None
    workers: int = Field(default=1, ge=1)
    invariants: bool = False
    match_tol: float = Field(default=1e-9, gt=0)
    refine_tol: float = Field(default=1e-12, gt=0)

    @field_validator("phase", mode="before")
    @classmethod
    def _exact_phase(cls, value):
        if value is None or isinstance(value, Fraction):
            return None if value is None else value % 1
        if isinstance(value, int):
            return Fraction(value) % 1
        return parse_phase(str(value))

    @field_validator("n_range", "p_range", "q_range", mode="before")
    @classmethod
    def _ranges(cls, value):
        if value is None or isinstance(value, tuple):
            return value
        return parse_range(str(value))

    @classmethod
    def from_namespace(cls, args) -> "RunConfig":
        """Build from an argparse Namespace, filling defaults from Settings."""
        settings = get_settings()
        data = {k: v for k, v in vars(args).items() if v is not None}
        data.pop("func", None)
        data.setdefault("catalog_path", settings.catalog_path)
        data.setdefault("workers", settings.workers)
        data.setdefault("match_tol", settings.match_tol)
        data.setdefault("refine_tol", settings.refine_tol)
        try:
            return cls(**data)
        except ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(part) for part in first["loc"])
            raise ConfigError(f"{field}: {first['msg']}") from e

    def range_values(self, name: str) -> List[int]:
        bounds = getattr(self, f"{name}_range")
        if bounds is None:
            return []
        return list(range(bounds[0], bounds[1] + 1))
