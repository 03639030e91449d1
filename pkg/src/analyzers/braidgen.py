"""
Braid Generator for simple minimal knots.

Builds the crossing schedule of the N strands
B_k(t) = cos(2π(p(t+k)/N + phase)) + i·sin(2πq(t+k)/N), k = 0..N-1, over the
window [ε, 1+ε), ranks each crossing by height, signs it, and assembles the
canonical braid word. Word-level maps (mirror, flip, reverse, rotation) and
the parity-based symmetry classification live here too.

Features:
    - Exact rational crossing times and height levels
    - Geometric (authoritative) and closed-form crossing signs, cross-checked
    - Closure permutation, writhe and word symmetries
    - Symmetry classification of the triple

Usage:
    from src.core.params import canonical_params
    from src.analyzers.braidgen import braid_word, writhe

    word = braid_word(canonical_params(3, 5, 4))
    print(word.to_signed(), writhe(word))   # [1, 2, -1, 2, -1, -2, 1, -2] 0
"""

import logging
import math
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from src.core.errors import (
    DegenerateSign,
    FormulaMismatch,
    InternalError,
    LevelCollision,
    NonCoprime,
)
from src.core.params import KnotParams, epsilon_offset, validate

logger = logging.getLogger(__name__)

LEVEL_GUARD = 1e-9
SIGN_GUARD = 1e-12

Letter = Tuple[int, int]


@dataclass(frozen=True)
class Crossing:
    """
    One crossing of two strand graphs.

    Attributes:
        ordinal (int): 1-based position in the schedule
        time (Fraction): Exact crossing instant in [ε, 1+ε)
        k (int): Lower strand index
        l (int): Higher strand index (k < l)
        m (int): Integer index of the crossing equation
        level (int): Height rank s in 1..N-1, 1 being the topmost
        sign (int, optional): +1 or -1 once evaluated
    """
    ordinal: int
    time: Fraction
    k: int
    l: int
    m: int
    level: int
    sign: Optional[int] = None

    def with_sign(self, sign: int) -> "Crossing":
        return replace(self, sign=sign)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["time"] = str(self.time)
        return data


@dataclass(frozen=True)
class SignTerms:
    """Z/2 terms of the closed sign formula: pair term, index parity and phase term."""
    T: int
    Pm: int
    R: int

    @property
    def s(self) -> int:
        return (1 + self.T + self.Pm + self.R) % 2


@dataclass(frozen=True)
class BraidWord:
    """
    Word in the Artin generators of the braid group on `strands` strands.

    Letters are (generator, exponent) with generator in 1..strands-1 and
    exponent ±1. The signed-integer form writes σ_g as g and σ_g⁻¹ as -g.
    """
    strands: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        for g, e in self.letters:
            if not 1 <= g < self.strands or e not in (1, -1):
                raise InternalError(
                    f"invalid letter ({g},{e}) on {self.strands} strands"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def to_signed(self) -> List[int]:
        return [g * e for g, e in self.letters]

    @classmethod
    def from_signed(cls, strands: int, signed: Iterable[int]) -> "BraidWord":
        return cls(strands, tuple((abs(x), 1 if x > 0 else -1) for x in signed))

    def to_dict(self) -> Dict[str, Any]:
        return {"strands": self.strands, "word": self.to_signed()}


@dataclass(frozen=True)
class ClosureInfo:
    permutation: Tuple[int, ...]
    cycles: Tuple[Tuple[int, ...], ...]
    is_knot: bool

    @property
    def components(self) -> int:
        return len(self.cycles)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "permutation": list(self.permutation),
            "cycles": [list(c) for c in self.cycles],
            "is_knot": self.is_knot,
        }


@dataclass(frozen=True)
class LevelTable:
    """Distinct crossing heights, highest first, and the rank of each crossing."""
    values: Tuple[float, ...]
    ranks: Dict[Tuple[int, int, int], int] = field(compare=False)


class SymmetryClass(str, Enum):
    REVERSIBLE = "Reversible"
    STRONGLY_FULLY_AMPHICHEIRAL = "StronglyFullyAmphicheiral"
    PERIODIC_ORDER_TWO = "PeriodicOrderTwo"


@dataclass(frozen=True)
class SymmetryReport:
    kind: SymmetryClass
    reversible: bool = True
    linking_number: Optional[int] = None

    @property
    def label(self) -> str:
        if self.kind is SymmetryClass.PERIODIC_ORDER_TWO:
            return (
                f"PeriodicOrderTwo+Reversible "
                f"(axis linking number {self.linking_number})"
            )
        return self.kind.value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "reversible": self.reversible,
            "linking_number": self.linking_number,
            "label": self.label,
        }


def _level_key(N: int, q: int, k: int, l: int, m: int) -> Fraction:
    """Height of a crossing as cos(π·key), key folded into (0,1)."""
    u = (m + Fraction(q * (k - l), N)) % 2
    return u if u <= 1 else 2 - u


def crossing_schedule(N: int, q: int, eps: Fraction) -> List[Crossing]:
    """
    Every instant in [ε, 1+ε) at which two strand graphs share a height.

    Strands k < l meet at t = N(2m+1)/(4q) - (k+l)/2. Crossings are ordered by
    (t, k+l, k-l); equal instants occur only for N >= 4 and always on pairs at
    non-adjacent levels, so their letters commute.
    """
    if gcd(N, q) != 1:
        raise NonCoprime(N, q, "q")
    eps = Fraction(eps)
    step = Fraction(N, 2 * q)
    raw = []
    for k in range(N):
        for l in range(k + 1, N):
            offset = Fraction(k + l, 2)
            m = math.ceil(((eps + offset) * 4 * q / N - 1) / 2)
            t = Fraction(N * (2 * m + 1), 4 * q) - offset
            while t < 1 + eps:
                if t >= eps:
                    level = _level_key(N, q, k, l, m) * N
                    raw.append((t, k, l, m, int(level)))
                t += step
                m += 1

    raw.sort(key=lambda c: (c[0], c[1] + c[2], c[1] - c[2]))
    schedule = [
        Crossing(ordinal=i + 1, time=t, k=k, l=l, m=m, level=s)
        for i, (t, k, l, m, s) in enumerate(raw)
    ]
    if len(schedule) != q * (N - 1):
        raise InternalError(
            f"schedule for ({N},{q}) has {len(schedule)} crossings, "
            f"expected {q * (N - 1)}"
        )
    logger.debug(f"crossing_schedule({N},{q},{eps}): {len(schedule)} crossings")
    return schedule


def y_levels(N: int, q: int) -> LevelTable:
    """
    Floating evaluation of the crossing heights (-1)^m cos(πq(k-l)/N).

    Heights closer than 1e-9 raise LevelCollision, as does a count other
    than N-1.
    """
    schedule = crossing_schedule(N, q, epsilon_offset(N, q))
    heights = {
        (c.k, c.l, c.m): (-1) ** c.m * math.cos(math.pi * q * (c.k - c.l) / N)
        for c in schedule
    }
    values: List[float] = []
    for y in sorted(heights.values(), reverse=True):
        # same exact height up to rounding
        if values and abs(values[-1] - y) < 1e-13:
            continue
        values.append(y)
    gaps = [a - b for a, b in zip(values, values[1:])]
    if gaps and min(gaps) < LEVEL_GUARD:
        raise LevelCollision(N, q, min(gaps))
    if len(values) != N - 1:
        raise LevelCollision(N, q, 0.0)

    ranks = {}
    for key, y in heights.items():
        ranks[key] = 1 + min(range(len(values)), key=lambda i: abs(values[i] - y))
    return LevelTable(values=tuple(values), ranks=ranks)


def _strand_re(params: KnotParams, k: int, t: Fraction) -> float:
    turn = (Fraction(params.p) * (t + k) / params.N + params.phase) % 1
    return math.cos(2 * math.pi * float(turn))


def _strand_slope(params: KnotParams, k: int, t: Fraction) -> float:
    turn = (Fraction(params.q) * (t + k) / params.N) % 1
    return math.cos(2 * math.pi * float(turn))


def crossing_sign_direct(params: KnotParams, c: Crossing) -> int:
    """
    Sign from the geometry: the strand with the smaller real part is in front,
    and the crossing is positive when that strand is the one going up.
    """
    diff = _strand_re(params, c.k, c.time) - _strand_re(params, c.l, c.time)
    if abs(diff) < SIGN_GUARD:
        raise DegenerateSign(c.k, c.l, c.time, abs(diff))
    slope = _strand_slope(params, c.k, c.time)
    return -int(math.copysign(1, slope)) * int(math.copysign(1, diff))


def sign_terms(params: KnotParams, c: Crossing) -> SignTerms:
    N, p, q = params.triple
    d = c.k - c.l
    pair = floor(Fraction(q * d, N)) + floor(Fraction(p * d, N))
    phase_term = floor(2 * params.phase + Fraction(p * (2 * c.m + 1), 2 * q))
    return SignTerms(T=pair % 2, Pm=c.m % 2, R=phase_term % 2)


@lru_cache(maxsize=1)
def sign_convention() -> int:
    """
    Map from the Z/2 value s to a geometric sign, fixed once on K(3,4,4).

    Returns c such that sign = c·(-1)^s.
    """
    params = validate(3, 4, 4, Fraction(1, 2))
    found = set()
    for c in crossing_schedule(3, 4, epsilon_offset(3, 4)):
        direct = crossing_sign_direct(params, c)
        found.add(direct * (-1) ** sign_terms(params, c).s)
    if len(found) != 1:
        raise InternalError("closed sign formula is inconsistent on K(3,4,4)")
    convention = found.pop()
    logger.info(f"Sign convention calibrated on K(3,4,4): c = {convention:+d}")
    return convention


def crossing_sign_closed(
    params: KnotParams, c: Crossing, check: bool = True
) -> Tuple[int, SignTerms]:
    """Closed-form sign with exact floors; optionally checked against the geometry."""
    terms = sign_terms(params, c)
    sign = sign_convention() * (-1) ** terms.s
    if check:
        direct = crossing_sign_direct(params, c)
        if direct != sign:
            raise FormulaMismatch(c.ordinal, direct, sign)
    return sign, terms


def signed_schedule(params: KnotParams, check_closed: bool = True) -> List[Crossing]:
    """Schedule with authoritative signs; the closed form must agree when checked."""
    schedule = crossing_schedule(params.N, params.q, epsilon_offset(params.N, params.q))
    out = []
    for c in schedule:
        sign = crossing_sign_direct(params, c)
        if check_closed:
            closed, _ = crossing_sign_closed(params, c, check=False)
            if closed != sign:
                raise FormulaMismatch(c.ordinal, sign, closed)
        out.append(c.with_sign(sign))
    return out


def braid_word(params: KnotParams, check_closed: bool = True) -> BraidWord:
    schedule = signed_schedule(params, check_closed=check_closed)
    word = BraidWord(params.N, tuple((c.level, c.sign) for c in schedule))
    logger.info(
        f"Built braid word for {params.label}: {len(word)} letters, "
        f"writhe {writhe(word)}"
    )
    return word


def closure_permutation(w: BraidWord) -> ClosureInfo:
    """
    Permutation of the closed braid: strand starting at position i ends at
    perm[i], and the closure joins end position i back to start position i.
    """
    order = list(range(w.strands))
    for g, _ in w.letters:
        order[g - 1], order[g] = order[g], order[g - 1]
    perm = [0] * w.strands
    for position, strand in enumerate(order):
        perm[strand] = position

    seen = set()
    cycles = []
    for start in range(w.strands):
        if start in seen:
            continue
        cycle = []
        node = start
        while node not in seen:
            seen.add(node)
            cycle.append(node)
            node = perm[node]
        cycles.append(tuple(cycle))
    return ClosureInfo(
        permutation=tuple(perm), cycles=tuple(cycles), is_knot=len(cycles) == 1
    )


def writhe(w: BraidWord) -> int:
    return sum(e for _, e in w.letters)


def mirror_word(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple((g, -e) for g, e in w.letters))


def flip_word(w: BraidWord) -> BraidWord:
    """σ_i -> σ_{N-i}."""
    return BraidWord(w.strands, tuple((w.strands - g, e) for g, e in w.letters))


def reverse_word(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(reversed(w.letters)))


def rotate_word(w: BraidWord, shift: int) -> BraidWord:
    """Cyclic rotation to the left by `shift` letters."""
    if not w.letters:
        return w
    shift %= len(w.letters)
    return BraidWord(w.strands, w.letters[shift:] + w.letters[:shift])


def commutation_normal_form(letters: Sequence[Letter]) -> Tuple[Letter, ...]:
    """
    Lexicographically least word reachable by far commutation.

    σ_i and σ_j commute when |i - j| >= 2; repeatedly taking the smallest
    letter that commutes with everything before it gives one representative
    per commutation class.
    """
    remaining = list(letters)
    out = []
    while remaining:
        best = 0
        for j in range(1, len(remaining)):
            g = remaining[j][0]
            if any(abs(g - h) < 2 for h, _ in remaining[:j]):
                continue
            if remaining[j] < remaining[best]:
                best = j
        out.append(remaining.pop(best))
    return tuple(out)


def circular_shift_equal(w1: BraidWord, w2: BraidWord) -> Optional[int]:
    """
    Smallest left rotation taking w1 to w2 up to far commutation, or None.

    Letters at one crossing instant sit on disjoint strand pairs, so two
    schedules that order such a group differently still give the same braid.
    """
    if w1.strands != w2.strands or len(w1) != len(w2):
        return None
    target = commutation_normal_form(w2.letters)
    for shift in range(max(len(w1), 1)):
        if commutation_normal_form(rotate_word(w1, shift).letters) == target:
            return shift
    return None

    for shift in range(max(len(w1), 1)):
        if rotate_word(w1, shift).letters == w2.letters:
            return shift
    return None


def shifted_phase(params: KnotParams) -> Fraction:
    """Phase moved by p/(2q) turns, where the word becomes mirror∘flip rotated."""
    return (params.phase + Fraction(params.p, 2 * params.q)) % 1


def symmetry_class(N: int, p: int, q: int) -> SymmetryReport:
    if (p + q) % 2:
        return SymmetryReport(SymmetryClass.STRONGLY_FULLY_AMPHICHEIRAL)
    if (N % 2 == 0) or (p % 2 == 0 and q % 2 == 0):
        return SymmetryReport(SymmetryClass.PERIODIC_ORDER_TWO, linking_number=N)
    return SymmetryReport(SymmetryClass.REVERSIBLE)
