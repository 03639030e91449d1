"""
Command-line front end.

Subcommands:
    braid N p q          braid word, closure, writhe and crossing table
    invariants N p q     Alexander, Jones, diagnostics and catalog candidates
    scan N q             identify K(N,p,q) over a range of p
    phases N p q         critical phases and the canonical phase
    verify N p q         numeric certification of the exact crossings
    sweep                acceptance checks over a box of triples

Shared flags: --phase a/b, --format text|json|csv, --catalog PATH.
Exit status: 0 on success, 1 when a check fails, 2 on invalid input.

Usage:
    python main.py invariants 4 13 5
    python main.py braid 3 5 4 --phase 1/8 --svg k354.svg
    python main.py scan 3 4 --p 5..29 --report scan.pdf
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

import pandas as pd
from colorama import Fore, Style, just_fix_windows_console

from src.analyzers.braidgen import signed_schedule
from src.analyzers.pipeline import KnotPipeline
from src.core.config import RunConfig
from src.core.errors import KnotError
from src.core.params import canonical_params
from src.utils.reporter import create_scan_pdf
from src.utils.visualizer import KnotVisualizer

logger = logging.getLogger(__name__)


def _status(ok: bool) -> str:
    if ok:
        return f"{Fore.GREEN}PASS{Style.RESET_ALL}"
    return f"{Fore.RED}FAIL{Style.RESET_ALL}"


def _emit_json(data: Any) -> None:
    print(json.dumps(data, indent=2, default=str))


def _emit_frame(frame: pd.DataFrame, fmt: str) -> None:
    if fmt == "csv":
        print(frame.to_csv(index=False), end="")
    else:
        print(frame.to_string(index=False))


def _triple(config: RunConfig):
    return config.N, config.p, config.q


def cmd_braid(config: RunConfig, pipeline: KnotPipeline) -> int:
    report = pipeline.braid_report(*_triple(config), config.phase)
    if config.svg_path:
        params = canonical_params(*_triple(config), config.phase)
        KnotVisualizer.render_braid_diagram(params, signed_schedule(params), config.svg_path)
        report["svg_path"] = config.svg_path

    if config.output_format == "json":
        _emit_json(report)
    elif config.output_format == "csv":
        _emit_frame(pd.DataFrame(report["crossings"]), "csv")
    else:
        closure = report["closure"]
        print(f"{report['label']}  ({report['strands']} strands, {report['length']} letters)")
        print(f"word:     {report['word']}")
        print(f"writhe:   {report['writhe']}")
        print(f"closure:  {closure['permutation']}  cycles {closure['cycles']}")
        print(f"symmetry: {report['symmetry']['label']}")
        print()
        _emit_frame(pd.DataFrame(report["crossings"]), "text")
    return 0


def cmd_invariants(config: RunConfig, pipeline: KnotPipeline) -> int:
    report = pipeline.invariants_report(*_triple(config), config.phase)
    if config.output_format == "json":
        _emit_json(report)
        return 0

    ident = report["identification"]
    row = {
        "label": report["label"],
        "writhe": report["writhe"],
        "alexander": report["alexander"]["rolfsen_text"],
        "jones": report["jones"]["text"] if report["jones"] else report["jones_note"],
        "primary": ident["primary"],
        "candidates": "; ".join(c["name"] for c in ident["candidates"]),
        "fibered_necessary": report["fibered_necessary"],
        "symmetry": report["symmetry"]["label"],
    }
    if config.output_format == "csv":
        _emit_frame(pd.DataFrame([row]), "csv")
        return 0

    print(report["label"])
    print(f"  word:        {report['word']}")
    print(f"  writhe:      {report['writhe']}")
    print(f"  Alexander:   {report['alexander']['text']}   {row['alexander']}")
    print(f"  Δ(-1):       {report['alexander_at_minus_one']}")
    print(f"  Jones:       {row['jones']}")
    print(f"  square mod 2: {report['square_mod2']}   Arf: {report['arf_diagnostic']}")
    if report["diagnostics_note"]:
        print(f"  {Fore.YELLOW}note: {report['diagnostics_note']}{Style.RESET_ALL}")
    print(f"  fibered (necessary condition): {report['fibered_necessary']}")
    print(f"  symmetry:    {row['symmetry']}")
    if report["prediction"]:
        print(f"  predicted:   {report['prediction']['name']} ({report['prediction']['reason']})")
    print("  candidates:")
    for c in ident["candidates"]:
        print(f"    {c['name']:<28} {c['strength']}")
    if not ident["candidates"]:
        print("    none in catalog")
    if ident["obstruction_note"]:
        print(f"  {Fore.YELLOW}{ident['obstruction_note']}{Style.RESET_ALL}")
    return 0


def cmd_scan(config: RunConfig, pipeline: KnotPipeline) -> int:
    N, q = config.N, config.q
    p_values = config.range_values("p") or list(range(N + 1, N + 2 * q * N + 1))
    result = pipeline.scan(N, q, p_values, workers=config.workers)

    if config.report_path:
        create_scan_pdf(result, config.report_path)

    if config.output_format == "json":
        _emit_json(result.to_dict())
    elif config.output_format == "csv":
        _emit_frame(result.frame(), "csv")
    else:
        _emit_frame(result.frame(), "text")
        print()
        print(f"classes ({len(result.classes)}): {', '.join(result.classes)}")
        for key, info in result.periodicity.items():
            ok = not info["mismatches"]
            print(
                f"{key} {info['modulus']}: {info['checked']} pairs {_status(ok)}"
            )
        if result.skipped:
            print(f"skipped p: {[s['p'] for s in result.skipped]}")
    return 0


def cmd_phases(config: RunConfig, pipeline: KnotPipeline) -> int:
    report = pipeline.phases_report(*_triple(config))
    if config.output_format == "json":
        _emit_json(report)
    elif config.output_format == "csv":
        _emit_frame(pd.DataFrame({"phase": report["phases"]}), "csv")
    else:
        print(f"{report['count']} critical phases of K({config.N},{config.p},{config.q}):")
        print("  " + ", ".join(report["phases"]))
        print(f"canonical phase: {report['canonical']}")
    return 0


def cmd_verify(config: RunConfig, pipeline: KnotPipeline) -> int:
    report = pipeline.verify_report(
        *_triple(config), config.phase, config.match_tol, config.refine_tol
    )
    crossing = report["report"]
    if config.output_format == "json":
        _emit_json(report)
    elif config.output_format == "csv":
        _emit_frame(pd.DataFrame([{
            "label": report["label"],
            "expected": report["expected_crossings"],
            "matched": crossing["matched"],
            "missing": len(crossing["missing"]),
            "extra": len(crossing["extra"]),
            "sign_disagreements": len(crossing["sign_disagreements"]),
            "closed_form_mismatches": len(report["closed_form_mismatches"]),
            "max_time_error": crossing["max_time_error"],
            "min_separation": report["min_separation"],
            "clean": report["clean"],
        }]), "csv")
    else:
        print(report["label"])
        print(f"  crossings matched: {crossing['matched']}/{report['expected_crossings']}")
        print(f"  missing {len(crossing['missing'])}, extra {len(crossing['extra'])}, "
              f"unresolved {len(crossing['unresolved'])}")
        print(f"  max time error:    {crossing['max_time_error']:.3e} "
              f"(tolerance {crossing['match_tol']:g})")
        print(f"  sign disagreements: {len(crossing['sign_disagreements'])}")
        print(f"  closed-form sign mismatches: {len(report['closed_form_mismatches'])}")
        print(f"  min separation:    {report['min_separation']:.3e} "
              f"(guard {report['separation_guard']:g})")
        print(f"  {_status(report['clean'])}")
    return 0 if report["clean"] else 1


def cmd_sweep(config: RunConfig, pipeline: KnotPipeline) -> int:
    n_values = config.range_values("n") or list(range(2, 7))
    p_values = config.range_values("p") or list(range(3, 14))
    q_values = config.range_values("q") or list(range(3, 14))
    result = pipeline.sweep(
        n_values, p_values, q_values, invariants=config.invariants, workers=config.workers
    )

    if config.output_format == "json":
        _emit_json(result.to_dict())
    elif config.output_format == "csv":
        _emit_frame(result.frame(), "csv")
    else:
        print(f"{len(result.rows)} triples checked, {result.skipped} skipped")
        for check in result.CHECKS:
            ran = [row for row in result.rows if check in row]
            if not ran:
                continue
            failed = result.failures.get(check, 0)
            print(f"  {check:<18} {len(ran) - failed}/{len(ran)}  {_status(not failed)}")
        errors = [row for row in result.rows if row["status"] != "ok"]
        for row in errors:
            print(f"  {Fore.RED}K({row['N']},{row['p']},{row['q']}): {row['error']}{Style.RESET_ALL}")
        for finding in result.findings:
            print(f"  {Fore.YELLOW}finding: {finding}{Style.RESET_ALL}")
        print(_status(result.passed))
    return 0 if result.passed else 1


def _add_shared(parser: argparse.ArgumentParser, phase: bool = True) -> None:
    if phase:
        parser.add_argument("--phase", help="phase override in turns, e.g. 1/8")
    parser.add_argument(
        "--format", dest="output_format", choices=["text", "json", "csv"], default="text"
    )
    parser.add_argument("--catalog", dest="catalog_path", help="extra catalog JSON")


def _add_triple(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("N", type=int, help="number of strands")
    parser.add_argument("p", type=int)
    parser.add_argument("q", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knots",
        description="Braids, invariants and identification of simple minimal knots K(N,p,q,phase).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    braid = sub.add_parser("braid", help="braid word and crossing table")
    _add_triple(braid)
    _add_shared(braid)
    braid.add_argument("--svg", dest="svg_path", help="write the braid diagram (.svg or .png)")
    braid.set_defaults(func=cmd_braid)

    invariants = sub.add_parser("invariants", help="Alexander, Jones and identification")
    _add_triple(invariants)
    _add_shared(invariants)
    invariants.set_defaults(func=cmd_invariants)

    scan = sub.add_parser("scan", help="identify K(N,p,q) over a range of p")
    scan.add_argument("N", type=int)
    scan.add_argument("q", type=int)
    scan.add_argument("--p", dest="p_range", help="inclusive range A..B (default: one period)")
    scan.add_argument("--workers", type=int)
    scan.add_argument("--report", dest="report_path", help="write a PDF report")
    scan.add_argument("--metrics", dest="metrics_path", help="export timing metrics JSON")
    _add_shared(scan, phase=False)
    scan.set_defaults(func=cmd_scan)

    phases = sub.add_parser("phases", help="critical and canonical phases")
    _add_triple(phases)
    _add_shared(phases, phase=False)
    phases.set_defaults(func=cmd_phases)

    verify = sub.add_parser("verify", help="numeric certification of the crossings")
    _add_triple(verify)
    _add_shared(verify)
    verify.add_argument("--match-tol", dest="match_tol", type=float)
    verify.add_argument("--refine-tol", dest="refine_tol", type=float)
    verify.set_defaults(func=cmd_verify)

    sweep = sub.add_parser("sweep", help="acceptance checks over a box of triples")
    sweep.add_argument("--N", dest="n_range", help="range A..B (default 2..6)")
    sweep.add_argument("--p", dest="p_range", help="range A..B (default 3..13)")
    sweep.add_argument("--q", dest="q_range", help="range A..B (default 3..13)")
    sweep.add_argument(
        "--invariants", action="store_true", default=None,
        help="also run the Alexander/Jones family and phase-invariance checks",
    )
    sweep.add_argument("--workers", type=int)
    sweep.add_argument("--metrics", dest="metrics_path", help="export timing metrics JSON")
    _add_shared(sweep, phase=False)
    sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    just_fix_windows_console()
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = args.func

    try:
        config = RunConfig.from_namespace(args)
        pipeline = KnotPipeline(catalog_path=config.catalog_path)
        code = handler(config, pipeline)
        if config.metrics_path:
            pipeline.monitor.export_metrics(config.metrics_path)
        return code
    except KnotError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        print(f"{Fore.RED}error:{Style.RESET_ALL} {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
