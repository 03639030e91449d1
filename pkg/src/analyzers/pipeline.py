"""
Knot Pipeline: orchestrates the engines into reports.

Runs braid construction, invariants, identification and oracle certification
for single triples, and fans out over parameter ranges for scans and sweeps.
Every step is timed through the PerformanceMonitor.

Features:
    - Single-knot braid, invariants, phases and verification reports
    - p-scans with identification classes and a periodicity summary
    - Box sweeps running the schedule, certification and writhe checks, plus
      optional invariant checks (structural families, phase invariance, fiberedness)
    - Optional worker threads with deterministic row order

Usage:
    from src.analyzers.pipeline import KnotPipeline

    pipeline = KnotPipeline()
    report = pipeline.invariants_report(4, 13, 5)
    scan = pipeline.scan(3, 4, range(5, 30))
    print(scan.classes)
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Dict, Iterable, List, Optional, Tuple

import pandas as pd

from src.analyzers.braidgen import (
    braid_word,
    closure_permutation,
    crossing_schedule,
    crossing_sign_closed,
    crossing_sign_direct,
    signed_schedule,
    symmetry_class,
    writhe,
    y_levels,
)
from src.analyzers.catalog import Catalog, default_catalog, identify, load_catalog, predict_type
from src.analyzers.invariants import (
    alexander,
    arf_diagnostic,
    fibered_necessary,
    jones,
    jones_equivalent_up_to_mirror,
    rolfsen_coeffs,
    square_mod2,
)
from src.analyzers.oracle import (
    CurveSampler,
    certify_schedule,
    min_separation,
    scan_singular_phases,
)
from src.core.config import get_settings
from src.core.errors import KnotError, KnotValidationError
from src.core.monitoring import PerformanceMonitor
from src.core.polynomials import evaluate, to_json, to_text
from src.core.params import (
    KnotParams,
    canonical_params,
    canonical_phase,
    critical_phases,
    epsilon_offset,
    sample_phases,
    validate,
)

logger = logging.getLogger(__name__)


def poly_summary(poly) -> Dict[str, Any]:
    return {"text": to_text(poly), "terms": to_json(poly)}


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def check_range(N: int, p: int, q: int) -> None:
    """Triple checks of validate(); the canonical phase is never critical."""
    canonical_params(N, p, q)


@dataclass
class ScanResult:
    """
    One p-scan at fixed N and q.

    Attributes:
        N (int), q (int): Fixed parameters
        rows (List[Dict]): One row per admissible p, ordered by p
        skipped (List[Dict]): p values rejected by validation, with the reason
        periodicity (Dict): Δ(p) = Δ(p + 2qN) summary and its CRT refinement
        classes (List[str]): Distinct primary identifications in order of appearance
    """
    N: int
    q: int
    rows: List[Dict[str, Any]] = field(default_factory=list)
    skipped: List[Dict[str, Any]] = field(default_factory=list)
    periodicity: Dict[str, Any] = field(default_factory=dict)
    classes: List[str] = field(default_factory=list)

    COLUMNS = [
        "p", "phase", "status", "writhe", "alexander", "identification",
        "strength", "predicted", "symmetry", "fibered_necessary",
    ]

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=self.COLUMNS)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.N,
            "q": self.q,
            "rows": self.rows,
            "skipped": self.skipped,
            "periodicity": self.periodicity,
            "classes": self.classes,
        }


@dataclass
class SweepResult:
    rows: List[Dict[str, Any]] = field(default_factory=list)
    skipped: int = 0
    findings: List[str] = field(default_factory=list)

    CHECKS = [
        "cardinality", "levels", "certified", "singular_phases", "sign_formula",
        "writhe_law", "single_cycle", "phase_invariance", "gen1", "gen2", "gen3",
        "obstruction",
    ]

    @property
    def failures(self) -> Dict[str, int]:
        out = {}
        for check in self.CHECKS:
            failed = sum(1 for row in self.rows if row.get(check) is False)
            if failed:
                out[check] = failed
        return out

    @property
    def passed(self) -> bool:
        return not self.failures and all(row["status"] == "ok" for row in self.rows)

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rows": self.rows,
            "skipped": self.skipped,
            "failures": self.failures,
            "passed": self.passed,
            "findings": self.findings,
        }


class KnotPipeline:
    """
    Report builder over the braid, invariant, catalog and oracle engines.

    Attributes:
        catalog (Catalog): Reference knots used for identification
        monitor (PerformanceMonitor): Collects per-task timings

    Methods:
        braid_report: Word, closure, writhe and crossing table
        invariants_report: Alexander, Jones, diagnostics and identification
        phases_report: Critical phases and the canonical phase
        verify_report: Oracle certification and closed-form sign check
        scan: Rows over a p range with classes and periodicity
        sweep: Acceptance checks over a parameter box
    """

    def __init__(
        self,
        catalog: Optional[Catalog] = None,
        monitor: Optional[PerformanceMonitor] = None,
        catalog_path: Optional[str] = None,
    ):
        if catalog is None:
            catalog = load_catalog(catalog_path) if catalog_path else default_catalog()
        self.catalog = catalog
        self.monitor = monitor or PerformanceMonitor()
        self.settings = get_settings()

    def params(self, N: int, p: int, q: int, phase: Optional[Fraction] = None) -> KnotParams:
        params = canonical_params(N, p, q, phase)
        for note in params.notes:
            logger.warning(f"{params.label}: {note}")
        return params

    def braid_report(self, N: int, p: int, q: int, phase: Optional[Fraction] = None) -> Dict[str, Any]:
        params = self.params(N, p, q, phase)
        with self.monitor.track("braid", params.label):
            schedule = signed_schedule(params)
            word = braid_word(params)
            closure = closure_permutation(word)
        return {
            "params": params.to_dict(),
            "label": params.label,
            "strands": word.strands,
            "word": word.to_signed(),
            "length": len(word),
            "writhe": writhe(word),
            "closure": closure.to_dict(),
            "epsilon": str(epsilon_offset(N, q)),
            "crossings": [c.to_dict() for c in schedule],
            "symmetry": symmetry_class(N, p, q).to_dict(),
        }

    def invariants_report(
        self, N: int, p: int, q: int, phase: Optional[Fraction] = None
    ) -> Dict[str, Any]:
        params = self.params(N, p, q, phase)
        with self.monitor.track("braid", params.label):
            word = braid_word(params)
        e = writhe(word)
        with self.monitor.track("alexander", params.label):
            delta = alexander(word)

        jones_poly = None
        jones_note = None
        if word.strands <= self.settings.jones_max_strands:
            with self.monitor.track("jones", params.label):
                jones_poly = jones(word)
        else:
            jones_note = f"skipped: more than {self.settings.jones_max_strands} strands"

        with self.monitor.track("identify", params.label):
            ident = identify(delta, jones_poly, e, self.catalog)
        prediction = predict_type(N, p, q)

        square = square_mod2(delta)
        arf = arf_diagnostic(delta)
        diagnostics_note = None
        if not (p % 2 and q % 2) and (not square or arf):
            diagnostics_note = (
                "mod-2 diagnostics depart from the square-mod-2 / zero-Arf "
                "expectation for p, q not both odd"
            )
            logger.warning(f"{params.label}: {diagnostics_note}")

        return {
            "params": params.to_dict(),
            "label": params.label,
            "word": word.to_signed(),
            "writhe": e,
            "alexander": {
                **poly_summary(delta),
                "rolfsen": rolfsen_coeffs(delta).to_list(),
                "rolfsen_text": str(rolfsen_coeffs(delta)),
            },
            "alexander_at_minus_one": evaluate(delta, -1),
            "arf_diagnostic": arf,
            "square_mod2": square,
            "diagnostics_note": diagnostics_note,
            "fibered_necessary": fibered_necessary(delta),
            "symmetry": symmetry_class(N, p, q).to_dict(),
            "jones": poly_summary(jones_poly) if jones_poly is not None else None,
            "jones_note": jones_note,
            "identification": ident.to_dict(),
            "prediction": prediction.to_dict() if prediction else None,
        }

    def phases_report(self, N: int, p: int, q: int) -> Dict[str, Any]:
        phase_set = critical_phases(N, p, q)
        return {
            **phase_set.to_dict(),
            "count": len(phase_set),
            "canonical": str(canonical_phase(N, p, q)),
        }

    def verify_report(
        self,
        N: int,
        p: int,
        q: int,
        phase: Optional[Fraction] = None,
        match_tol: Optional[float] = None,
        refine_tol: Optional[float] = None,
    ) -> Dict[str, Any]:
        params = self.params(N, p, q, phase)
        schedule = crossing_schedule(N, q, epsilon_offset(N, q))

        sign_mismatches = []
        signed = []
        for c in schedule:
            direct = crossing_sign_direct(params, c)
            closed, terms = crossing_sign_closed(params, c, check=False)
            if closed != direct:
                sign_mismatches.append({
                    "ordinal": c.ordinal,
                    "direct": direct,
                    "closed": closed,
                    "terms": {"T": terms.T, "Pm": terms.Pm, "R": terms.R},
                })
            signed.append(c.with_sign(direct))

        sampler = CurveSampler(params)
        with self.monitor.track("certify", params.label):
            report = certify_schedule(signed, sampler, match_tol, refine_tol)
            separation = min_separation(sampler)

        separation_ok = separation > self.settings.separation_guard
        clean = report.clean and not sign_mismatches and separation_ok
        return {
            "params": params.to_dict(),
            "label": params.label,
            "expected_crossings": q * (N - 1),
            "report": report.to_dict(),
            "closed_form_mismatches": sign_mismatches,
            "min_separation": separation,
            "separation_guard": self.settings.separation_guard,
            "clean": clean,
        }

    def _scan_row(self, N: int, p: int, q: int) -> Dict[str, Any]:
        row: Dict[str, Any] = {"p": p}
        try:
            params = self.params(N, p, q)
            row["phase"] = str(params.phase)
            with self.monitor.track("scan_row", params.label):
                word = braid_word(params)
                delta = alexander(word)
                jones_poly = (
                    jones(word) if word.strands <= self.settings.jones_max_strands else None
                )
                ident = identify(delta, jones_poly, writhe(word), self.catalog)
            prediction = predict_type(N, p, q)
            first = ident.candidates[0] if ident.candidates else None
            row.update({
                "status": "ok",
                "writhe": writhe(word),
                "alexander": str(rolfsen_coeffs(delta)),
                "identification": first.name if first else "unidentified",
                "strength": first.strength if first else None,
                "candidates": ident.names,
                "predicted": prediction.name if prediction else None,
                "symmetry": symmetry_class(N, p, q).label,
                "fibered_necessary": fibered_necessary(delta),
                "_alexander": delta,
            })
        except KnotError as e:
            logger.error(f"Scan row K({N},{p},{q}) failed: {e}")
            row.update({"status": "error", "error": str(e)})
        self.monitor.increment_counter(f"scan_rows_{row['status']}")
        if row.get("identification") == "unidentified":
            self.monitor.increment_counter("scan_unidentified")
        return row

    def scan(
        self, N: int, q: int, p_values: Iterable[int], workers: int = 1
    ) -> ScanResult:
        """
        Identify K(N,p,q) at the canonical phase for every admissible p.

        Rows for p failing validation are listed under `skipped`; computation
        errors stay in the table with status "error".
        """
        result = ScanResult(N=N, q=q)
        admissible = []
        for p in sorted(set(p_values)):
            try:
                check_range(N, p, q)
                admissible.append(p)
            except KnotValidationError as e:
                result.skipped.append({"p": p, "reason": str(e)})
                logger.debug(f"Scan skips p={p}: {e}")

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(lambda p: self._scan_row(N, p, q), admissible))
        else:
            rows = [self._scan_row(N, p, q) for p in admissible]
        rows.sort(key=lambda r: r["p"])

        result.periodicity = self._periodicity(N, q, rows)
        for row in rows:
            row.pop("_alexander", None)
            if row["status"] == "ok" and row["identification"] not in result.classes:
                result.classes.append(row["identification"])
        result.rows = rows
        logger.info(
            f"Scan K({N},p,{q}) over {len(admissible)} values of p: "
            f"{len(result.classes)} classes"
        )
        return result

    def _periodicity(self, N: int, q: int, rows: List[Dict[str, Any]]) -> Dict[str, Any]:
        by_p = {r["p"]: r["_alexander"] for r in rows if r["status"] == "ok"}
        summary = {}
        for key, period in (("period", 2 * q * N), ("crt_period", _lcm(N, 2 * q))):
            checked, mismatches = 0, []
            for p, delta in by_p.items():
                other = by_p.get(p + period)
                if other is None:
                    continue
                checked += 1
                if other != delta:
                    mismatches.append([p, p + period])
            summary[key] = {"modulus": period, "checked": checked, "mismatches": mismatches}
        return summary

    def _sweep_row(self, N: int, p: int, q: int, invariants: bool) -> Dict[str, Any]:
        row: Dict[str, Any] = {"N": N, "p": p, "q": q}
        try:
            params = self.params(N, p, q)
            row["phase"] = str(params.phase)
            with self.monitor.track("sweep_row", params.label):
                schedule = crossing_schedule(N, q, epsilon_offset(N, q))
                row["cardinality"] = len(schedule) == q * (N - 1)
                levels = y_levels(N, q)
                row["levels"] = all(
                    levels.ranks[(c.k, c.l, c.m)] == c.level for c in schedule
                )

                signed = signed_schedule(params, check_closed=False)
                row["sign_formula"] = all(
                    crossing_sign_closed(params, c, check=False)[0] == c.sign
                    for c in signed
                )
                report = certify_schedule(signed, CurveSampler(params))
                row["certified"] = report.clean and report.matched == q * (N - 1)
                row["max_time_error"] = report.max_time_error
                row["singular_phases"] = (
                    set(scan_singular_phases(N, p, q)) == set(critical_phases(N, p, q).phases)
                )

                word = braid_word(params, check_closed=False)
                e = writhe(word)
                row["writhe"] = e
                row["writhe_law"] = self._writhe_law(N, p, q, e)
                row["single_cycle"] = closure_permutation(word).is_knot

                if invariants:
                    self._invariant_checks(row, params, word)
            row["status"] = "ok"
        except KnotError as e:
            logger.error(f"Sweep row K({N},{p},{q}) failed: {e}")
            row.update({"status": "error", "error": str(e)})
        return row

    @staticmethod
    def _writhe_law(N: int, p: int, q: int, e: int) -> bool:
        if (p + q) % 2 and e != 0:
            return False
        if p == q and e != q * (N - 1):
            return False
        if gcd(p, q) == 1 and abs(e) > N * N + N - 4:
            return False
        return True

    def _invariant_checks(self, row: Dict[str, Any], params: KnotParams, word) -> None:
        N, p, q = params.triple
        delta = alexander(word)
        row["alexander"] = str(rolfsen_coeffs(delta))
        row["fibered_necessary"] = fibered_necessary(delta)
        with_jones = N <= self.settings.jones_max_strands
        v = jones(word) if with_jones else None
        row["jones_checked"] = with_jones

        row["phase_invariance"] = all(
            alexander(braid_word(validate(N, p, q, phase), check_closed=False)) == delta
            for phase in sample_phases(N, p, q)
        )

        shifted = braid_word(canonical_params(N, p + 2 * q * N, q), check_closed=False)
        gen1 = alexander(shifted) == delta
        if with_jones:
            gen1 = gen1 and jones_equivalent_up_to_mirror(jones(shifted), v)
        row["gen1"] = gen1

        row["gen3"] = alexander(braid_word(canonical_params(N, q, p), check_closed=False)) == delta

        if p == N + q:
            row["gen2"] = delta == 1 and (v is None or v == 1)

        ident = identify(delta, v, writhe(word), self.catalog)
        row["identification"] = ident.primary
        row["obstruction"] = ident.obstruction_note is None

    def sweep(
        self,
        n_values: Iterable[int],
        p_values: Iterable[int],
        q_values: Iterable[int],
        invariants: bool = False,
        workers: int = 1,
    ) -> SweepResult:
        """
        Run the acceptance checks at the canonical phase of every valid triple.

        Odd-N knots whose Alexander polynomial is not monic are reported as
        findings, not failures.
        """
        result = SweepResult()
        triples: List[Tuple[int, int, int]] = []
        for N in sorted(set(n_values)):
            for q in sorted(set(q_values)):
                for p in sorted(set(p_values)):
                    try:
                        check_range(N, p, q)
                        triples.append((N, p, q))
                    except KnotValidationError:
                        result.skipped += 1

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(lambda t: self._sweep_row(*t, invariants), triples))
        else:
            rows = [self._sweep_row(*t, invariants) for t in triples]
        result.rows = sorted(rows, key=lambda r: (r["N"], r["q"], r["p"]))

        for check, failed in result.failures.items():
            self.monitor.increment_counter(f"sweep_failed_{check}", failed)
        for row in result.rows:
            if row["N"] % 2 and row.get("fibered_necessary") is False:
                result.findings.append(
                    f"K({row['N']},{row['p']},{row['q']}) has odd N and a non-monic "
                    f"Alexander polynomial {row['alexander']}"
                )
        logger.info(
            f"Sweep over {len(triples)} triples: failures {result.failures}, "
            f"{len(result.findings)} findings"
        )
        return result
