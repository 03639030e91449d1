"""
Parameter validation and exact phase bookkeeping for K(N,p,q,phase).

A simple minimal knot is cut out of the branch-point germ
(cos 2πNt, sin 2πNt, cos(2πpt + 2π·phase), sin 2πqt). All phases here are
stored in TURNS (a fraction of a full turn) as exact Fractions in [0,1).

Features:
    - Triple validation (strand count, coprimality, the p,q > N construction range)
    - Exact critical-phase enumeration: phases where two strands meet
    - Canonical phase: midpoint of the widest critical gap
    - ε offset of the crossing-time window [ε, 1+ε)
    - Deterministic sampling of non-critical phases

Usage:
    from src.core.params import validate, critical_phases, canonical_phase

    params = validate(3, 5, 4, canonical_phase(3, 5, 4))
    print(params.label)           # K(3,5,4,1/8)
    print(critical_phases(3, 5, 4).phases)
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Dict, Iterator, List, Optional, Tuple

from src.core.errors import CriticalPhase, NonCoprime, OutOfRange

logger = logging.getLogger(__name__)

Rational = Fraction


@dataclass(frozen=True)
class KnotParams:
    """
    A validated triple plus its exact phase in turns.

    Attributes:
        N (int): Strand count (the branching order)
        p (int): Frequency of the real coordinate
        q (int): Frequency of the imaginary coordinate
        phase (Fraction): Phase in turns, in [0,1)
        notes (Tuple[str, ...]): Advisory remarks attached during validation
    """
    N: int
    p: int
    q: int
    phase: Fraction
    notes: Tuple[str, ...] = field(default=(), compare=False)

    @property
    def triple(self) -> Tuple[int, int, int]:
        return (self.N, self.p, self.q)

    @property
    def label(self) -> str:
        return f"K({self.N},{self.p},{self.q},{self.phase})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.N,
            "p": self.p,
            "q": self.q,
            "phase": str(self.phase),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class PhaseSet:
    """Sorted, distinct critical phases of one triple."""
    N: int
    p: int
    q: int
    phases: Tuple[Fraction, ...]

    def __contains__(self, phase) -> bool:
        return Fraction(phase) % 1 in self._lookup

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.phases)

    def __len__(self) -> int:
        return len(self.phases)

    @property
    def _lookup(self) -> frozenset:
        return frozenset(self.phases)

    def gaps(self) -> List[Tuple[Fraction, Fraction]]:
        """(start, width) of each cyclic gap, starting from the smallest phase."""
        out = []
        count = len(self.phases)
        for i, start in enumerate(self.phases):
            end = self.phases[i + 1] if i + 1 < count else self.phases[0] + 1
            out.append((start, end - start))
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.N,
            "p": self.p,
            "q": self.q,
            "phases": [str(ph) for ph in self.phases],
        }


def require_coprime(N: int, p: int, q: int) -> None:
    if N < 2:
        raise OutOfRange("N", N, "a branch point needs at least 2 strands")
    if gcd(N, p) != 1:
        raise NonCoprime(N, p, "p")
    if gcd(N, q) != 1:
        raise NonCoprime(N, q, "q")


@lru_cache(maxsize=1024)
def critical_phases(N: int, p: int, q: int) -> PhaseSet:
    """
    All phases at which some crossing instant is also a real-part coincidence.

    Strands k and l share a height at t = N(2n+1)/(4q) - (k+l)/2, where
    2t + k + l = N(2n+1)/(2q). Their real parts coincide there exactly when
    p(2n+1)/(2q) + 2·phase is an integer, so the critical set is
    {m/2 - p(2n+1)/(4q) mod 1 : 0 <= n < 2q, m in {0,1}}.
    """
    require_coprime(N, p, q)
    found = set()
    for n in range(2 * q):
        base = Fraction(p * (2 * n + 1), 4 * q)
        for m in (0, 1):
            found.add((Fraction(m, 2) - base) % 1)
    phases = tuple(sorted(found))
    logger.debug(f"critical_phases({N},{p},{q}): {len(phases)} phases")
    return PhaseSet(N=N, p=p, q=q, phases=phases)


def is_singular(N: int, p: int, q: int, phase: Fraction) -> bool:
    return Fraction(phase) % 1 in critical_phases(N, p, q)


def canonical_phase(N: int, p: int, q: int) -> Fraction:
    """Midpoint of the widest cyclic gap; the first widest gap wins ties."""
    phase_set = critical_phases(N, p, q)
    best_start, best_width = phase_set.gaps()[0]
    for start, width in phase_set.gaps()[1:]:
        if width > best_width:
            best_start, best_width = start, width
    return (best_start + best_width / 2) % 1


def crossing_times_mod1(N: int, q: int) -> List[Fraction]:
    """Distinct crossing instants of the (N,q) schedule reduced mod 1."""
    times = set()
    for k in range(N):
        for l in range(k + 1, N):
            for n in range(2 * q):
                t = Fraction(N * (2 * n + 1), 4 * q) - Fraction(k + l, 2)
                times.add(t % 1)
    return sorted(times)


@lru_cache(maxsize=256)
def epsilon_offset(N: int, q: int) -> Fraction:
    """
    Start of the crossing window [ε, 1+ε).

    ε = 1/(8qN), halved until it lies below half the smallest gap between
    crossing instants and coincides with none of them.
    """
    if gcd(N, q) != 1:
        raise NonCoprime(N, q, "q")
    times = crossing_times_mod1(N, q)
    if len(times) > 1:
        gaps = [b - a for a, b in zip(times, times[1:])]
        gaps.append(times[0] + 1 - times[-1])
        min_gap = min(gaps)
    else:
        min_gap = Fraction(1)
    eps = Fraction(1, 8 * q * N)
    while eps in times or eps >= min_gap / 2:
        eps /= 2
    return eps


def validate(N: int, p: int, q: int, phase: Fraction) -> KnotParams:
    """
    Check a triple and phase and return immutable KnotParams.

    Checks run in a fixed order: strand count, gcd(N,p), gcd(N,q), the p,q > N
    construction range, then the critical-phase test. The phase is reduced
    mod 1. p and q both even is accepted with a note.

    Raises:
        OutOfRange, NonCoprime, CriticalPhase
    """
    require_coprime(N, p, q)
    if p <= N:
        raise OutOfRange("p", p, f"the germ construction needs p > N = {N}")
    if q <= N:
        raise OutOfRange("q", q, f"the germ construction needs q > N = {N}")
    phase = Fraction(phase) % 1
    if is_singular(N, p, q, phase):
        raise CriticalPhase(N, p, q, phase)

    notes = []
    if p % 2 == 0 and q % 2 == 0:
        notes.append("p and q are both even")
        logger.debug(f"K({N},{p},{q}): p and q both even, admitted with a note")
    return KnotParams(N=N, p=p, q=q, phase=phase, notes=tuple(notes))


def canonical_params(N: int, p: int, q: int, phase: Optional[Fraction] = None) -> KnotParams:
    """Validate at the given phase, or at the canonical phase when none is given."""
    require_coprime(N, p, q)
    if phase is None:
        phase = canonical_phase(N, p, q)
    return validate(N, p, q, phase)


def sample_phases(N: int, p: int, q: int, count: int = 5) -> List[Fraction]:
    """
    Deterministic non-critical phases spread over the critical gaps.

    With fewer gaps than samples, several evenly spaced points are taken
    inside each gap.
    """
    gaps = critical_phases(N, p, q).gaps()
    rounds = -(-count // len(gaps))
    out: List[Fraction] = []
    for i in range(count):
        if count <= len(gaps):
            index = (i * len(gaps)) // count
            slot = 0
        else:
            index = i % len(gaps)
            slot = i // len(gaps)
        start, width = gaps[index]
        out.append((start + width * Fraction(2 * slot + 1, 2 * rounds)) % 1)
    return out
