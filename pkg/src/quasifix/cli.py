"""Command-line front end.

Every operation the library offers is reachable here without writing
Python: axiom batteries, the chain-infimum closure, symmetrization,
Picard orbits, the theorem harness, gallery verification, and ingestion
of user-supplied finite spaces from JSON files.

Conventions shared by all subcommands:

* ``--format json`` emits one compact, key-sorted JSON document with a
  top-level ``"schema"`` field; ``--format text`` renders the same data
  as human-readable lines.  JSON output is byte-identical across
  ``--workers`` settings.
* Every rational is printed as a canonical ``"p/q"`` string.
* Exit status 0 means every executed check passed, 1 means a check
  failed or a harness flagged an inconsistency (the report is still
  printed), 2 means the invocation or an input file was unusable.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .axioms import (
    AxiomReport,
    check_core_axioms,
    check_F,
    check_H,
    check_N,
    check_relaxed_triangle,
    check_triangle,
)
from .chains import (
    DistanceMatrix,
    associated_functional,
    distance_matrix,
    matrix_space,
    symmetrize,
)
from .core import (
    DistanceSpace,
    FormatError,
    QuasifixError,
    Window,
    WindowError,
    enumerate_window,
    load_space,
    parse_point,
    scalar_from_text,
    scalar_to_text,
)
from .dynamics import (
    analyze_convergence,
    picard_orbit,
    recurrent_orbit_points,
    theorem_harness,
)
from .gallery import GALLERY_KEYS, GalleryInstance, gallery_instance, verify_gallery

USAGE_ERROR = 2


# ---------------------------------------------------------------------------
# argument plumbing


def _rational(text: str) -> Fraction:
    try:
        return scalar_from_text(text)
    except FormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("json", "text"),
        default="text",
        help="report format (default: text)",
    )
    common.add_argument(
        "--workers",
        type=int,
        default=1,
        metavar="N",
        help="worker threads for window scans (default: 1)",
    )

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--example",
        choices=GALLERY_KEYS,
        help="use a gallery instance",
    )
    group.add_argument(
        "--space",
        metavar="FILE",
        help="load a finite space from a JSON file",
    )

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument(
        "--window",
        type=int,
        metavar="N",
        help="largest natural to enumerate (naturals domains only)",
    )
    bounds.add_argument(
        "--q-max", type=int, metavar="Q", help="level bound (ordinal grids only)"
    )
    bounds.add_argument(
        "--r-max", type=int, metavar="R", help="rank bound (ordinal grids only)"
    )

    parser = argparse.ArgumentParser(
        prog="quasifix",
        description="Exact verification of generalized distance spaces "
        "and their fixed-point dynamics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "axioms",
        parents=[common, source, bounds],
        help="run the axiom battery on a window",
    )
    p.add_argument(
        "--probe",
        action="append",
        default=[],
        metavar="POINT",
        help="also run the per-point merge bound through POINT (repeatable)",
    )
    p.add_argument(
        "--pair",
        action="append",
        nargs=2,
        default=[],
        metavar=("X", "Y"),
        help="also compute the joint-approach floor for X and Y (repeatable)",
    )
    p.add_argument(
        "--epsilon",
        type=_rational,
        default=None,
        metavar="P/Q",
        help="target for merge bounds (default 1/4; gallery default if set)",
    )
    p.add_argument(
        "--uniform",
        action="store_true",
        help="also run the uniform merge bound (one delta for all points)",
    )
    p.add_argument(
        "--a",
        type=_rational,
        default=None,
        metavar="P/Q",
        help="relaxation constant; with --delta, checks the relaxed triangle",
    )
    p.add_argument(
        "--delta",
        type=_rational,
        default=None,
        metavar="P/Q",
        help="gate for the relaxed triangle (requires --a)",
    )

    sub.add_parser(
        "barrho",
        parents=[common, source, bounds],
        help="chain-infimum closure of the distance on a window",
    )

    sub.add_parser(
        "symmetrize",
        parents=[common, source, bounds],
        help="round-trip symmetrization, with its own axiom battery",
    )

    p = sub.add_parser(
        "orbit",
        parents=[common],
        help="trace a Picard orbit and analyze its convergence",
    )
    p.add_argument("--example", choices=GALLERY_KEYS, required=True)
    p.add_argument("--start", metavar="POINT", help="orbit seed (default: gallery)")
    p.add_argument("--horizon", type=int, metavar="N", help="steps to iterate")
    p.add_argument("--tol", type=_rational, metavar="P/Q", help="closeness tolerance")
    p.add_argument(
        "--tail", type=int, metavar="N", help="tail length for the Cauchy scan"
    )

    p = sub.add_parser(
        "harness",
        parents=[common],
        help="evaluate the six fixed-point statements on a gallery instance",
    )
    p.add_argument("--example", choices=GALLERY_KEYS, required=True)

    p = sub.add_parser(
        "gallery-verify",
        parents=[common],
        help="check gallery instances against their catalogued properties",
    )
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--example", choices=GALLERY_KEYS)
    group.add_argument("--all", action="store_true", help="verify every instance")

    p = sub.add_parser(
        "ingest",
        parents=[common],
        help="parse and classify a finite space from a JSON file",
    )
    p.add_argument("--space", metavar="FILE", required=True)

    return parser


def _resolve_source(args) -> tuple[DistanceSpace, GalleryInstance | None]:
    if getattr(args, "example", None):
        instance = gallery_instance(args.example)
        return instance.space, instance
    return load_space(args.space), None


def _resolve_window(
    space: DistanceSpace, instance: GalleryInstance | None, args
) -> Window:
    """Window for cubic-cost commands: explicit bounds win; gallery
    instances fall back to their bounded scan window; file spaces
    enumerate everything."""
    if args.window is not None or args.q_max is not None or args.r_max is not None:
        return enumerate_window(
            space, nat_max=args.window, q_max=args.q_max, r_max=args.r_max
        )
    if instance is not None:
        return instance.triple_window
    return enumerate_window(space)


# ---------------------------------------------------------------------------
# rendering


def _emit(payload: dict, lines: list[str], fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(
            json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
        )
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _axiom_line(report: AxiomReport) -> str:
    bits = [f"{report.axiom:<22} {report.verdict}"]
    if report.witness is not None:
        labels = ",".join(p.label() for p in report.witness)
        bits.append(f"witness=({labels})")
    if report.witness_values is not None:
        values = ",".join(scalar_to_text(v) for v in report.witness_values)
        bits.append(f"values=({values})")
    if report.extremal is not None:
        bits.append(f"extremal={scalar_to_text(report.extremal)}")
    if report.note:
        bits.append(f"[{report.note}]")
    return "  " + "  ".join(bits)


def _battery_lines(space: DistanceSpace, window: Window, reports) -> list[str]:
    lines = [f"space {space.name}  window: {window.description}"]
    lines.extend(_axiom_line(r) for r in reports)
    return lines


# ---------------------------------------------------------------------------
# subcommands


def _cmd_axioms(args) -> tuple[dict, list[str], int]:
    space, instance = _resolve_source(args)
    window = _resolve_window(space, instance, args)
    w = args.workers

    reports = list(check_core_axioms(space, window, w))
    reports.append(check_triangle(space, window, w))

    if (args.a is None) != (args.delta is None):
        raise WindowError("--a and --delta must be given together")
    if args.a is not None:
        reports.append(check_relaxed_triangle(space, window, args.a, args.delta, w))

    epsilon = args.epsilon
    if epsilon is None:
        epsilon = instance.epsilon if instance is not None else Fraction(1, 4)
    for text in args.probe:
        probe = parse_point(text, space.domain)
        reports.append(check_N(space, window, probe, epsilon, workers=w))
    if args.uniform:
        reports.append(check_F(space, window, epsilon, workers=w))
    for x_text, y_text in args.pair:
        x = parse_point(x_text, space.domain)
        y = parse_point(y_text, space.domain)
        reports.append(check_H(space, window, x, y, workers=w))

    all_hold = all(r.holds for r in reports)
    payload = {
        "schema": "axiom-battery/1",
        "space": space.name,
        "window": window.description,
        "reports": [r.to_json_dict() for r in reports],
        "all_hold": all_hold,
    }
    lines = _battery_lines(space, window, reports)
    lines.append(f"all hold: {'yes' if all_hold else 'no'}")
    return payload, lines, 0 if all_hold else 1


def _closure_invariants(
    space: DistanceSpace, window: Window, direct: DistanceMatrix, closure: DistanceMatrix, workers: int
) -> dict:
    n = len(window.points)
    below = all(
        closure.entries[i][j] <= direct.entries[i][j]
        for i in range(n)
        for j in range(n)
    )
    rows = closure.entries
    triangle = all(
        rows[i][k] <= rows[i][j] + rows[j][k]
        for i in range(n)
        for j in range(n)
        for k in range(n)
    )
    again = associated_functional(matrix_space(closure), window, workers)
    idempotent = again.entries == closure.entries
    return {
        "closure_le_direct": below,
        "closure_triangle": triangle,
        "idempotent": idempotent,
        "equals_direct": closure.entries == direct.entries,
    }


def _cmd_barrho(args) -> tuple[dict, list[str], int]:
    space, instance = _resolve_source(args)
    window = _resolve_window(space, instance, args)
    direct = distance_matrix(space, window)
    closure = associated_functional(space, window, args.workers)
    facts = _closure_invariants(space, window, direct, closure, args.workers)
    ok = facts["closure_le_direct"] and facts["closure_triangle"] and facts["idempotent"]

    payload = {
        "schema": "chain-closure/1",
        "space": space.name,
        "window": window.description,
        "direct": direct.to_json_dict(),
        "closure": closure.to_json_dict(),
        **facts,
    }
    lines = [
        f"space {space.name}  window: {window.description}",
        f"  closure <= direct:    {'yes' if facts['closure_le_direct'] else 'NO'}",
        f"  closure triangle:     {'yes' if facts['closure_triangle'] else 'NO'}",
        f"  closure idempotent:   {'yes' if facts['idempotent'] else 'NO'}",
        f"  closure == direct:    {'yes' if facts['equals_direct'] else 'no'}",
    ]
    return payload, lines, 0 if ok else 1


def _cmd_symmetrize(args) -> tuple[dict, list[str], int]:
    space, instance = _resolve_source(args)
    window = _resolve_window(space, instance, args)
    sym = symmetrize(space)
    reports = list(check_core_axioms(sym, window, args.workers))
    reports.append(check_triangle(sym, window, args.workers))
    all_hold = all(r.holds for r in reports)

    payload = {
        "schema": "symmetrization/1",
        "space": space.name,
        "symmetrized": sym.name,
        "window": window.description,
        "reports": [r.to_json_dict() for r in reports],
        "all_hold": all_hold,
        "matrix": distance_matrix(sym, window).to_json_dict(),
    }
    lines = _battery_lines(sym, window, reports)
    lines.append(f"regular metric on window: {'yes' if all_hold else 'no'}")
    return payload, lines, 0 if all_hold else 1


def _cmd_orbit(args) -> tuple[dict, list[str], int]:
    instance = gallery_instance(args.example)
    space = instance.space
    start = (
        parse_point(args.start, space.domain)
        if args.start is not None
        else instance.primary_start
    )
    horizon = args.horizon if args.horizon is not None else instance.horizon
    tol = args.tol if args.tol is not None else instance.tol
    if tol <= 0:
        raise WindowError("--tol must be positive")

    trace = picard_orbit(space, instance.self_map, start, horizon)
    verdict = analyze_convergence(
        space,
        trace,
        instance.window,
        tol=tol,
        tail=args.tail,
        dislocated_tol=instance.dislocated_tol,
        ladder=instance.ladder,
    )
    recurrent = recurrent_orbit_points(space, trace, instance.window, tol)

    payload = {
        "schema": "orbit-report/1",
        "example": instance.key,
        "map": instance.self_map.name,
        "trace": trace.to_json_dict(),
        "analysis": verdict.to_json_dict(),
        "recurrent": [p.label() for p in recurrent],
    }
    head = trace.points[: min(9, len(trace.points))]
    lines = [
        f"orbit of {instance.self_map.name} on {space.name} from {start.label()}",
        f"  first points: {' '.join(p.label() for p in head)}"
        + (" ..." if len(trace.points) > len(head) else ""),
        f"  cauchy (tol {scalar_to_text(tol)}): {verdict.cauchy}"
        f"  worst tail pair: {scalar_to_text(verdict.cauchy_extremal)}",
        f"  gaps vanish: {verdict.gaps_vanish}"
        f"  max tail step gap: {scalar_to_text(verdict.max_tail_gap)}",
        f"  plain limits:      {_label_set(verdict.limits)}",
        f"  dislocated limits: {_label_set(verdict.dislocated_limits)}",
        f"  ladder accumulation: {_label_set(verdict.accumulation)}",
        f"  recurrent points:    {_label_set(recurrent)}",
    ]
    return payload, lines, 0


def _label_set(points) -> str:
    return "{" + ",".join(p.label() for p in points) + "}"


def _cmd_harness(args) -> tuple[dict, list[str], int]:
    instance = gallery_instance(args.example)
    reports = theorem_harness(
        instance.space, instance.self_map, instance.harness_config(args.workers)
    )
    flagged = [r.theorem for r in reports if r.consistency != "ok"]

    payload = {
        "schema": "harness-report/1",
        "example": instance.key,
        "space": instance.space.name,
        "map": instance.self_map.name,
        "theorems": [r.to_json_dict() for r in reports],
        "counterexamples": flagged,
    }
    lines = [f"harness for {instance.space.name} / {instance.self_map.name}"]
    for r in reports:
        hyp = " ".join(f"{e.name}={e.status}" for e in r.hypotheses)
        con = " ".join(f"{e.name}={e.status}" for e in r.conclusions)
        lines.append(f"  {r.theorem}: {r.consistency}")
        lines.append(f"    hypotheses:  {hyp}")
        lines.append(f"    conclusions: {con}")
        if r.notes:
            lines.append(f"    note: {r.notes}")
    lines.append(
        "flagged: " + (", ".join(flagged) if flagged else "none")
    )
    return payload, lines, 0 if not flagged else 1


def _gallery_lines(report) -> list[str]:
    lines = [f"{report.key}  {report.title}"]
    for o in report.outcomes:
        mark = "PASS" if o.passed else "FAIL"
        lines.append(f"  [{mark}] {o.check_id}: {o.claim}")
        if not o.passed:
            lines.append(f"         expected: {o.expected}")
            lines.append(f"         actual:   {o.actual}")
    return lines


def _cmd_gallery_verify(args) -> tuple[dict, list[str], int]:
    if args.all:
        reports = [
            verify_gallery(gallery_instance(key), args.workers)
            for key in GALLERY_KEYS
        ]
        passed = all(r.passed for r in reports)
        payload = {
            "schema": "gallery-suite/1",
            "passed": passed,
            "reports": [r.to_json_dict() for r in reports],
        }
        lines = []
        for r in reports:
            lines.extend(_gallery_lines(r))
        lines.append(f"gallery: {'all pass' if passed else 'FAILURES'}")
        return payload, lines, 0 if passed else 1

    report = verify_gallery(gallery_instance(args.example), args.workers)
    lines = _gallery_lines(report)
    lines.append("pass" if report.passed else "FAIL")
    return report.to_json_dict(), lines, 0 if report.passed else 1


def _cmd_ingest(args) -> tuple[dict, list[str], int]:
    space = load_space(args.space)
    window = enumerate_window(space)
    reports = list(check_core_axioms(space, window, args.workers))
    reports.append(check_triangle(space, window, args.workers))
    by_name = {r.axiom: r.holds for r in reports}
    if by_name["symmetry"] and by_name["triangle"]:
        kind = "metric"
    elif by_name["triangle"]:
        kind = "quasimetric"
    elif by_name["symmetry"]:
        kind = "semimetric"
    else:
        kind = "distance"

    payload = {
        "schema": "ingest-report/1",
        "source": args.space,
        "space": space.name,
        "points": list(window.labels()),
        "completeness": space.completeness,
        "reports": [r.to_json_dict() for r in reports],
        "classification": kind,
    }
    lines = _battery_lines(space, window, reports)
    lines.insert(1, f"  points: {len(window.points)}  completeness: {space.completeness}")
    lines.append(f"classification on window: {kind}")
    return payload, lines, 0


_HANDLERS = {
    "axioms": _cmd_axioms,
    "barrho": _cmd_barrho,
    "symmetrize": _cmd_symmetrize,
    "orbit": _cmd_orbit,
    "harness": _cmd_harness,
    "gallery-verify": _cmd_gallery_verify,
    "ingest": _cmd_ingest,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers < 1:
        parser.error("--workers must be at least 1")
    try:
        payload, lines, status = _HANDLERS[args.command](args)
    except (QuasifixError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    _emit(payload, lines, args.format)
    return status


if __name__ == "__main__":
    sys.exit(main())
