"""
Exception hierarchy for the knots toolkit.

Every failure raised by the engines derives from KnotError so callers can
catch one type. Validation failures (bad triples, critical phases, malformed
CLI strings) derive from KnotValidationError and map to exit code 2.

Usage:
    from src.core.errors import KnotError, NonCoprime

    try:
        params = validate(4, 6, 5, Fraction(0))
    except NonCoprime as e:
        print(e)  # gcd(N,p) must be 1 ...
"""

from fractions import Fraction
from math import gcd
from typing import Any, List, Optional, Tuple


class KnotError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1

    def to_dict(self):
        return {"error": type(self).__name__, "message": str(self)}


class KnotValidationError(KnotError):
    """Input rejected before any computation."""

    exit_code = 2


class NonCoprime(KnotValidationError):
    """N shares a factor with p or q; the curve is singular for every phase."""

    def __init__(self, N: int, other: int, label: str = "p"):
        self.N = N
        self.other = other
        self.label = label
        super().__init__(
            f"gcd(N,{label}) must be 1: gcd({N},{other}) = {gcd(N, other)}, "
            f"the curve is singular for every phase"
        )


class OutOfRange(KnotValidationError):
    def __init__(self, field: str, value: Any, reason: str):
        self.field = field
        self.value = value
        super().__init__(f"{field}={value} out of range: {reason}")


class CriticalPhase(KnotValidationError):
    def __init__(self, N: int, p: int, q: int, phase: Fraction):
        self.triple = (N, p, q)
        self.phase = phase
        super().__init__(
            f"phase {phase} is critical for K({N},{p},{q}): two strands intersect"
        )


class ConfigError(KnotValidationError):
    """Malformed command-line value (phase, range, format)."""


class LevelCollision(KnotError):
    def __init__(self, N: int, q: int, separation: float):
        self.separation = separation
        super().__init__(
            f"level values of the ({N},{q}) schedule are closer than the "
            f"guard: separation {separation:.3e}"
        )


class DegenerateSign(KnotError):
    def __init__(self, k: int, l: int, time: Fraction, diff: float):
        self.pair = (k, l)
        self.time = time
        self.diff = diff
        super().__init__(
            f"crossing of strands ({k},{l}) at t={time} has |Re B_k - Re B_l| = "
            f"{diff:.3e}; the phase is critical or too close to one"
        )


class FormulaMismatch(KnotError):
    def __init__(self, ordinal: int, direct: int, closed: int):
        self.ordinal = ordinal
        self.direct = direct
        self.closed = closed
        super().__init__(
            f"closed-form sign {closed:+d} disagrees with geometric sign "
            f"{direct:+d} at crossing #{ordinal}"
        )


class UnresolvedCrossing(KnotError):
    def __init__(self, k: int, l: int, t: float, diff: float):
        self.pair = (k, l)
        self.t = t
        self.diff = diff
        super().__init__(
            f"cannot resolve over/under for strands ({k},{l}) near t={t:.12f}: "
            f"Re difference {diff:.3e}"
        )


class NotAKnot(KnotError):
    """Braid closure has more than one component."""

    def __init__(self, cycles: List[Tuple[int, ...]]):
        self.cycles = cycles
        super().__init__(
            f"braid closure has {len(cycles)} components, expected a knot"
        )


MultiComponent = NotAKnot


class StrandLimit(KnotError):
    def __init__(self, strands: int, limit: int):
        self.strands = strands
        self.limit = limit
        super().__init__(f"{strands} strands exceeds the Jones limit of {limit}")


class NotSymmetric(KnotError):
    def __init__(self, poly: Any):
        self.poly = poly
        super().__init__(f"polynomial {poly} is not symmetric under t -> 1/t")


class SchemaError(KnotError):
    """Catalog file does not conform to schema v1."""

    exit_code = 2

    def __init__(
        self,
        message: str,
        index: Optional[int] = None,
        field: Optional[str] = None,
        line: Optional[int] = None,
    ):
        self.index = index
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if index is not None:
            where.append(f"entry {index}")
        if field:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"catalog schema error: {prefix}{message}")


class InternalError(KnotError):
    pass


__all__ = [
    "KnotError",
    "KnotValidationError",
    "NonCoprime",
    "OutOfRange",
    "CriticalPhase",
    "ConfigError",
    "LevelCollision",
    "DegenerateSign",
    "FormulaMismatch",
    "UnresolvedCrossing",
    "NotAKnot",
    "MultiComponent",
    "StrandLimit",
    "NotSymmetric",
    "SchemaError",
    "InternalError",
]
