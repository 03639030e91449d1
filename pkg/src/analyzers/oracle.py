"""
Numeric Oracle: independent geometric check of the exact crossing engine.

Samples the strand curves on a dense grid, brackets every height coincidence
of every strand pair, refines it by bisection, and decides over/under and the
crossing sign from the sampled geometry. The exact schedule and signs are then
certified against these numeric crossings.

Features:
    - Vectorized grid scan and bisection with numpy
    - Over/under and sign from the real parts and slopes at each root
    - Schedule certification report (matched, missing, extra, sign disagreements)
    - Minimum strand separation and a phase scan for singular phases

Usage:
    from src.analyzers.oracle import CurveSampler, certify_schedule

    sampler = CurveSampler(params)
    report = certify_schedule(signed_schedule(params), sampler)
    print(report.clean, report.matched)
"""

import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.analyzers.braidgen import Crossing
from src.core.config import get_settings
from src.core.errors import UnresolvedCrossing
from src.core.params import KnotParams, epsilon_offset, require_coprime

logger = logging.getLogger(__name__)

OVER_UNDER_GUARD = 1e-10
BISECTION_STEPS = 64


@dataclass(frozen=True)
class NumericCrossing:
    t: float
    k: int
    l: int
    over_strand: Optional[int]
    sign: Optional[int]
    re_gap: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class CrossingReport:
    """
    Outcome of matching exact crossings to numeric ones.

    Attributes:
        matched (int): Exact crossings with a numeric partner within tolerance
        missing (List[Dict]): Numeric crossings with no exact partner
        extra (List[Dict]): Exact crossings with no numeric partner
        max_time_error (float): Largest |t_exact - t_numeric| among matches
        sign_disagreements (List[Dict]): Matches whose signs differ
        unresolved (List[Dict]): Numeric crossings too degenerate to sign
        match_tol (float): Time tolerance used for matching
        refine_tol (float): Bisection residual target
    """
    matched: int = 0
    missing: List[Dict[str, Any]] = field(default_factory=list)
    extra: List[Dict[str, Any]] = field(default_factory=list)
    max_time_error: float = 0.0
    sign_disagreements: List[Dict[str, Any]] = field(default_factory=list)
    unresolved: List[Dict[str, Any]] = field(default_factory=list)
    match_tol: float = 1e-9
    refine_tol: float = 1e-12

    @property
    def clean(self) -> bool:
        return not (
            self.missing or self.extra or self.sign_disagreements or self.unresolved
        ) and self.max_time_error < self.match_tol

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["clean"] = self.clean
        return data


class CurveSampler:
    """
    Evaluates the strands B_k(t) of one knot on a grid over [ε, 1+ε].

    The phase may be critical here, unlike in validated KnotParams, so the
    oracle can examine singular configurations.

    Attributes:
        params (KnotParams): Triple and phase in turns
        resolution (int): Grid points per unit of t
        eps (Fraction): Window offset of the (N,q) schedule
    """

    def __init__(self, params: KnotParams, resolution: Optional[int] = None):
        require_coprime(params.N, params.p, params.q)
        self.params = params
        self.resolution = resolution or get_settings().grid_factor * params.q
        self.eps = epsilon_offset(params.N, params.q)

    @classmethod
    def from_triple(
        cls, N: int, p: int, q: int, phase: Fraction, resolution: Optional[int] = None
    ) -> "CurveSampler":
        return cls(KnotParams(N=N, p=p, q=q, phase=Fraction(phase) % 1), resolution)

    def height(self, k: int, t: np.ndarray) -> np.ndarray:
        N, q = self.params.N, self.params.q
        return np.sin(2 * np.pi * q * (t + k) / N)

    def slope(self, k: int, t: np.ndarray) -> np.ndarray:
        N, q = self.params.N, self.params.q
        return np.cos(2 * np.pi * q * (t + k) / N)

    def real(self, k: int, t: np.ndarray, phase: Optional[float] = None) -> np.ndarray:
        N, p = self.params.N, self.params.p
        phase = float(self.params.phase) if phase is None else phase
        return np.cos(2 * np.pi * (p * (t + k) / N + phase))

    def grid(self) -> np.ndarray:
        return float(self.eps) + np.arange(self.resolution + 1) / self.resolution


def _pair_roots(sampler: CurveSampler, k: int, l: int) -> np.ndarray:
    """Refined instants in [ε, 1+ε) where strands k and l share a height."""
    t = sampler.grid()
    f = sampler.height(k, t) - sampler.height(l, t)
    s = np.sign(f)
    exact = t[:-1][s[:-1] == 0]
    idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
    lo, hi = t[idx], t[idx + 1]
    f_lo = f[idx]
    for _ in range(BISECTION_STEPS):
        mid = (lo + hi) / 2
        f_mid = sampler.height(k, mid) - sampler.height(l, mid)
        left = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(left, mid, lo)
        f_lo = np.where(left, f_mid, f_lo)
        hi = np.where(left, hi, mid)
    roots = np.concatenate([exact, (lo + hi) / 2])
    return np.sort(roots)


def _refined_roots(sampler: CurveSampler) -> List[Tuple[float, int, int]]:
    N = sampler.params.N
    out = []
    for k in range(N):
        for l in range(k + 1, N):
            out.extend((float(t), k, l) for t in _pair_roots(sampler, k, l))
    out.sort()
    return out


def _classify(
    sampler: CurveSampler, t: float, k: int, l: int, strict: bool
) -> NumericCrossing:
    tt = np.array([t])
    gap = float(sampler.real(k, tt)[0] - sampler.real(l, tt)[0])
    if abs(gap) < OVER_UNDER_GUARD:
        if strict:
            raise UnresolvedCrossing(k, l, t, abs(gap))
        return NumericCrossing(t=t, k=k, l=l, over_strand=None, sign=None, re_gap=gap)
    slope = float(sampler.slope(k, tt)[0])
    sign = -int(np.sign(slope)) * int(np.sign(gap))
    over = k if gap < 0 else l
    return NumericCrossing(t=t, k=k, l=l, over_strand=over, sign=sign, re_gap=gap)


def numeric_crossings(sampler: CurveSampler, strict: bool = True) -> List[NumericCrossing]:
    """
    Grid-bracketed, bisection-refined crossings with over/under and sign.

    The strand with the smaller real part is in front; the sign is positive
    when the front strand is rising.
    """
    crossings = [
        _classify(sampler, t, k, l, strict) for t, k, l in _refined_roots(sampler)
    ]
    logger.debug(
        f"numeric_crossings {sampler.params.label}: {len(crossings)} crossings "
        f"at resolution {sampler.resolution}"
    )
    return crossings


def certify_schedule(
    analytic: List[Crossing],
    sampler: CurveSampler,
    match_tol: Optional[float] = None,
    refine_tol: Optional[float] = None,
) -> CrossingReport:
    """
    Match exact crossings to numeric ones pair by pair, nearest time first.

    Exact crossings left over are reported as extra, numeric ones as missing.
    Failures are carried in the report rather than raised.
    """
    settings = get_settings()
    match_tol = match_tol or settings.match_tol
    refine_tol = refine_tol or settings.refine_tol
    report = CrossingReport(match_tol=match_tol, refine_tol=refine_tol)

    numeric = numeric_crossings(sampler, strict=False)
    for nc in numeric:
        tt = np.array([nc.t])
        residual = abs(float(sampler.height(nc.k, tt)[0] - sampler.height(nc.l, tt)[0]))
        if residual > refine_tol:
            logger.warning(f"Root of pair ({nc.k},{nc.l}) refined only to {residual:.2e}")
        if nc.sign is None:
            report.unresolved.append(nc.to_dict())

    available: Dict[Tuple[int, int], List[NumericCrossing]] = {}
    for nc in numeric:
        available.setdefault((nc.k, nc.l), []).append(nc)

    for c in sorted(analytic, key=lambda c: c.time):
        pool = available.get((c.k, c.l), [])
        t_exact = float(c.time)
        best = min(pool, key=lambda nc: abs(nc.t - t_exact), default=None)
        if best is None or abs(best.t - t_exact) > match_tol:
            report.extra.append(c.to_dict())
            continue
        pool.remove(best)
        report.matched += 1
        report.max_time_error = max(report.max_time_error, abs(best.t - t_exact))
        if c.sign is not None and best.sign is not None and c.sign != best.sign:
            report.sign_disagreements.append({
                "ordinal": c.ordinal,
                "time": str(c.time),
                "pair": [c.k, c.l],
                "exact_sign": c.sign,
                "numeric_sign": best.sign,
            })

    for pool in available.values():
        report.missing.extend(nc.to_dict() for nc in pool)
    report.missing.sort(key=lambda d: d["t"])

    logger.info(
        f"Certified {sampler.params.label}: matched {report.matched}, "
        f"missing {len(report.missing)}, extra {len(report.extra)}, "
        f"sign disagreements {len(report.sign_disagreements)}"
    )
    return report


def min_separation(sampler: CurveSampler, window: Optional[float] = None) -> float:
    """
    Smallest |B_k - B_l| near the crossings of each pair.

    Every grid point within `window` (default N/(8q), a quarter of the spacing
    between crossings of one pair) of a refined crossing is sampled, together
    with the crossing itself. Doubling the resolution only adds points, so the
    result never increases with resolution.
    """
    params = sampler.params
    half = window if window is not None else params.N / (8 * params.q)
    grid = sampler.grid()
    best = float("inf")
    for t0, k, l in _refined_roots(sampler):
        tt = np.append(grid[np.abs(grid - t0) <= half], t0)
        gap = np.hypot(
            sampler.real(k, tt) - sampler.real(l, tt),
            sampler.height(k, tt) - sampler.height(l, tt),
        )
        best = min(best, float(gap.min()))
    return best



def scan_singular_phases(
    N: int, p: int, q: int, threshold: float = 1e-9, resolution: Optional[int] = None
) -> List[Fraction]:
    """
    Phases on the grid j/(64pq) at which two strands meet.

    Crossing instants do not depend on the phase, so the roots are found
    once and the real-part gap is evaluated for every grid phase at once.
    """
    sampler = CurveSampler.from_triple(N, p, q, Fraction(0), resolution)
    roots = _refined_roots(sampler)
    steps = 64 * p * q
    phases = np.arange(steps) / steps
    t = np.array([r[0] for r in roots])[:, None]
    k = np.array([r[1] for r in roots])[:, None]
    l = np.array([r[2] for r in roots])[:, None]
    gap = np.abs(
        np.cos(2 * np.pi * (p * (t + k) / N + phases[None, :]))
        - np.cos(2 * np.pi * (p * (t + l) / N + phases[None, :]))
    )
    dips = np.nonzero(gap.min(axis=0) < threshold)[0]
    found = [Fraction(int(j), steps) for j in dips]
    logger.debug(f"scan_singular_phases({N},{p},{q}): {len(found)} dips")
    return found
