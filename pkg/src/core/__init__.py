"""
Core infrastructure: configuration, errors, exact parameters, sympy Laurent
polynomial helpers and performance monitoring.
"""

from src.core.config import RunConfig, Settings, get_settings, parse_phase, parse_range
from src.core.errors import KnotError, KnotValidationError
from src.core.polynomials import A, t, to_json, to_text
from src.core.monitoring import PerformanceMonitor, TaskTiming
from src.core.params import KnotParams, PhaseSet, canonical_params, critical_phases, validate

__all__ = [
    "RunConfig",
    "Settings",
    "get_settings",
    "parse_phase",
    "parse_range",
    "KnotError",
    "KnotValidationError",
    "A",
    "t",
    "to_json",
    "to_text",
    "PerformanceMonitor",
    "TaskTiming",
    "KnotParams",
    "PhaseSet",
    "canonical_params",
    "critical_phases",
    "validate",
]
