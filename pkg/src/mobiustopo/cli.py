"""Command-line interface.

Subcommands: classify, topo, conjugator, canonical, orbit, operator,
selftest. Exit codes: 0 true/ok, 1 selftest failure, 2 input error,
3 negative verdict, 4 indeterminate, 5 unsupported size. The --json report
is byte-identical for identical command lines (timing is shown only in the
human-readable output).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from enum import IntEnum
from pathlib import Path

from .errors import (
    IndeterminateError,
    InputError,
    UnsupportedSizeError,
    VerificationError,
)
from .extended_plane import format_point, parse_point
from .moebius import EPS_UNIT, MoebiusMap, format_map, parse_map
from .operators import (
    COMPLEX,
    REAL,
    complex_conditions,
    format_matrix,
    parse_matrix,
    real_conditions,
    root_of_unity,
    spectral_partition,
)
from .orbit import orbit_points, render_orbit_svg, write_orbit_csv
from .selftest import run_selftest
from .spectral import (
    ConjugacyClass,
    canonical_conjugacy_form,
    classify,
    conjugation_residual,
    conjugator,
    eigenvalues,
    fixed_points,
    multipliers,
    preferred_multiplier,
)
from .topo import topo_canonical_form, topo_conjugate


class ExitCode(IntEnum):
    OK = 0
    SELFTEST_FAILURE = 1
    INPUT_ERROR = 2
    NOT_CONJUGATE = 3
    INDETERMINATE = 4
    UNSUPPORTED_SIZE = 5


_CLASSIFY_NOTES = (
    "Real multipliers off the unit circle are labeled hyperbolic, negative "
    "ones included; unit-modulus multipliers, -1 among them, are elliptic."
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mobiustopo",
        description=(
            "Classify Moebius maps of the extended complex plane and decide "
            "conjugacy and topological conjugacy, with a parallel decision "
            "route through linear operators on C^2."
        ),
    )
    parser.add_argument("--json", action="store_true",
                        help="emit a JSON report instead of a table")
    parser.add_argument("--eps", type=float, default=EPS_UNIT,
                        help="unit-modulus and equality decision gate (default 1e-9)")
    parser.add_argument("--kmax", type=int, default=64,
                        help="largest exponent for the root-of-unity annotation (default 64)")
    parser.add_argument("--seed", type=int, default=42,
                        help="seed for verification sampling and the property suite (default 42)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify one map and report its invariants",
                       epilog=_CLASSIFY_NOTES)
    p.add_argument("map", help="coefficients a,b,c,d as complex literals, e.g. 2,0,0,1")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("topo", help="decide topological conjugacy of two maps")
    p.add_argument("map_f")
    p.add_argument("map_g")
    p.add_argument("--criterion", choices=("all", "trace", "eigen", "multiplier"),
                   default="all",
                   help="criterion to highlight; all three are always computed "
                        "and cross-checked")
    p.set_defaults(handler=cmd_topo)

    p = sub.add_parser("conjugator",
                       help="find a Moebius map h with g = h^-1 after f after h")
    p.add_argument("map_f")
    p.add_argument("map_g")
    p.set_defaults(handler=cmd_conjugator)

    p = sub.add_parser("canonical", help="canonical form of a map")
    p.add_argument("map")
    p.add_argument("--topological", action="store_true",
                   help="topological canonical form (2z, unit scaling, or z+1) "
                        "instead of the conjugacy form (mu z or z+1)")
    p.set_defaults(handler=cmd_canonical)

    p = sub.add_parser("orbit",
                       help="iterate a map and render the orbit as an SVG figure")
    p.add_argument("map")
    p.add_argument("--start", required=True, help="seed point (complex literal or inf)")
    p.add_argument("--iterations", type=int, default=20, help="iteration count (>= 1)")
    p.add_argument("--output", required=True, help="SVG output path")
    p.add_argument("--csv", action="store_true",
                   help="also write the point list as CSV next to the SVG")
    p.set_defaults(handler=cmd_orbit)

    p = sub.add_parser("operator",
                       help="decide topological conjugacy of two linear operators")
    p.add_argument("matrix_a", help="rows separated by ';', entries by ',', e.g. 2,0;0,0.5")
    p.add_argument("matrix_b")
    p.add_argument("--field", choices=(COMPLEX, REAL), default=COMPLEX)
    p.set_defaults(handler=cmd_operator)

    p = sub.add_parser("selftest", help="run the seeded cross-module property suite")
    p.add_argument("--count", type=int, default=1000,
                   help="ensemble size per suite (default 1000)")
    p.set_defaults(handler=cmd_selftest)

    return parser


def _classification_margin(f: MoebiusMap, eps: float) -> float:
    gates = [(f.identity_distance(), eps)]
    t = f.trace()
    gates.append((min(abs(t - 2.0), abs(t + 2.0)), eps))
    if not f.is_identity(eps):
        mus = multipliers(f, eps)
        for mu in mus.as_tuple():
            gates.append((abs(abs(mu) - 1.0), eps))
            gates.append((abs(mu.imag), eps * (1.0 + abs(mu))))
    return min(abs(value - threshold) for value, threshold in gates)


def cmd_classify(args) -> tuple:
    f = parse_map(args.map)
    eps = args.eps
    cls = classify(f, eps)
    result = {
        "class": cls.value,
        "margin": _classification_margin(f, eps),
    }
    if cls is ConjugacyClass.IDENTITY:
        result.update({
            "trace": format_point(f.trace()),
            "fixed_points": "all",
            "fixed_point_count": None,
            "eigenvalues": None,
            "multipliers": None,
            "canonical_conjugacy": None,
            "canonical_topological": None,
        })
    else:
        m = f.normalize()
        pair = eigenvalues(m)
        mult = multipliers(f, eps)
        fixed = fixed_points(f, eps)
        result.update({
            "trace": format_point(m.trace),
            "fixed_points": [format_point(p) for p in fixed.points],
            "fixed_point_count": fixed.count,
            "eigenvalues": [format_point(v) for v in pair.as_tuple()],
            "multipliers": [format_point(v) for v in mult.as_tuple()],
            "canonical_conjugacy": format_map(canonical_conjugacy_form(f, eps)),
            "canonical_topological": format_map(topo_canonical_form(f, eps)),
        })
    payload = {"inputs": {"map": args.map}, "result": result, "verdict": None}
    return payload, ExitCode.OK


def cmd_topo(args) -> tuple:
    f = parse_map(args.map_f)
    g = parse_map(args.map_g)
    decision = topo_conjugate(f, g, args.eps)
    result = {
        "conjugate": decision.verdict,
        "criterion_highlighted": args.criterion,
        "criteria": {
            "trace": decision.trace_verdict,
            "eigen": decision.eigen_verdict,
            "multiplier": decision.multiplier_verdict,
        },
        "margin": decision.margin,
        "notes": decision.notes,
        "classes": [classify(f, args.eps).value, classify(g, args.eps).value],
    }
    payload = {
        "inputs": {"map_f": args.map_f, "map_g": args.map_g},
        "result": result,
        "verdict": decision.verdict,
    }
    return payload, ExitCode.OK if decision.verdict else ExitCode.NOT_CONJUGATE


def cmd_conjugator(args) -> tuple:
    f = parse_map(args.map_f)
    g = parse_map(args.map_g)
    h = conjugator(f, g, args.eps, seed=args.seed)
    if h is None:
        result = {
            "found": False,
            "reason": "traces differ beyond sign",
            "trace_f": format_point(f.trace()),
            "trace_g": format_point(g.trace()),
        }
        verdict = False
        code = ExitCode.NOT_CONJUGATE
    else:
        result = {
            "found": True,
            "map": format_map(h),
            "residual": conjugation_residual(f, g, h, seed=args.seed),
            "trace_f": format_point(f.trace()),
            "trace_g": format_point(g.trace()),
        }
        verdict = True
        code = ExitCode.OK
    payload = {
        "inputs": {"map_f": args.map_f, "map_g": args.map_g},
        "result": result,
        "verdict": verdict,
    }
    return payload, code


def cmd_canonical(args) -> tuple:
    f = parse_map(args.map)
    if args.topological:
        form = topo_canonical_form(f, args.eps)
        kind = "topological"
    else:
        form = canonical_conjugacy_form(f, args.eps)
        kind = "conjugacy"
    result = {
        "kind": kind,
        "class": classify(f, args.eps).value,
        "canonical": format_map(form),
    }
    if classify(f, args.eps) is not ConjugacyClass.PARABOLIC:
        result["multiplier"] = format_point(preferred_multiplier(f, args.eps))
    payload = {"inputs": {"map": args.map}, "result": result, "verdict": None}
    return payload, ExitCode.OK


def cmd_orbit(args) -> tuple:
    f = parse_map(args.map)
    start = parse_point(args.start)
    points = orbit_points(f, start, args.iterations)
    try:
        render_orbit_svg(points, args.output, title=args.map)
    except OSError as exc:
        raise InputError(f"cannot write {args.output!r}: {exc}") from exc
    csv_path = None
    if args.csv:
        csv_path = str(Path(args.output).with_suffix(".csv"))
        try:
            write_orbit_csv(points, csv_path)
        except OSError as exc:
            raise InputError(f"cannot write {csv_path!r}: {exc}") from exc
    result = {
        "svg": args.output,
        "csv": csv_path,
        "iterations": args.iterations,
        "points": [format_point(p) for p in points],
    }
    payload = {
        "inputs": {"map": args.map, "start": args.start},
        "result": result,
        "verdict": None,
    }
    return payload, ExitCode.OK


def _partition_payload(partition) -> dict:
    def block(data):
        return [
            {
                "value": format_point(d.value),
                "algebraic": d.algebraic,
                "geometric": d.geometric,
            }
            for d in data
        ]

    return {
        "zero": block(partition.zero),
        "inside": block(partition.inside),
        "unit": block(partition.unit),
        "outside": block(partition.outside),
        "block_sizes": list(partition.block_sizes),
    }


def cmd_operator(args) -> tuple:
    A = parse_matrix(args.matrix_a, args.field)
    B = parse_matrix(args.matrix_b, args.field)
    if args.field == REAL:
        conditions = real_conditions(A, B, args.eps)
    else:
        conditions = complex_conditions(A, B, args.eps)
    verdict = conditions.all()
    pa = spectral_partition(A, args.eps)
    pb = spectral_partition(B, args.eps)

    def any_root_of_unity(partition):
        return any(
            root_of_unity(d.value, args.kmax)
            for block in (partition.zero, partition.inside, partition.unit,
                          partition.outside)
            for d in block
        )

    result = {
        "conjugate": verdict,
        "field": args.field,
        "conditions": dataclasses.asdict(conditions),
        "partition_a": _partition_payload(pa),
        "partition_b": _partition_payload(pb),
        "root_of_unity_a": any_root_of_unity(pa),
        "root_of_unity_b": any_root_of_unity(pb),
    }
    payload = {
        "inputs": {"matrix_a": args.matrix_a, "matrix_b": args.matrix_b},
        "result": result,
        "verdict": verdict,
    }
    return payload, ExitCode.OK if verdict else ExitCode.NOT_CONJUGATE


def cmd_selftest(args) -> tuple:
    report = run_selftest(seed=args.seed, count=args.count, eps=args.eps,
                          kmax=args.kmax)
    checks = {
        name: {
            "passed": c.passed,
            "failed": c.failed,
            "boundary": c.boundary,
            "failures": c.failures,
        }
        for name, c in report.checks.items()
    }
    result = {"ok": report.ok, "count": report.count, "checks": checks}
    if report.note:
        result["note"] = report.note
    payload = {"inputs": {"count": args.count}, "result": result,
               "verdict": report.ok}
    return payload, ExitCode.OK if report.ok else ExitCode.SELFTEST_FAILURE


def _flatten(prefix: str, value, lines: list):
    if isinstance(value, dict):
        for key, inner in value.items():
            _flatten(f"{prefix}{key}.", inner, lines)
    else:
        lines.append(f"{prefix[:-1]}: {value}")


def _print_human(envelope: dict, elapsed_ms: float):
    lines: list = []
    _flatten("", envelope, lines)
    for line in lines:
        print(line)
    print(f"elapsed_ms: {elapsed_ms:.1f}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    error = None
    payload: dict = {}
    try:
        payload, code = args.handler(args)
    except IndeterminateError as exc:
        error = {
            "kind": "indeterminate",
            "message": str(exc),
            "criteria": {
                "trace": exc.trace_verdict,
                "eigen": exc.eigen_verdict,
                "multiplier": exc.multiplier_verdict,
            },
            "margin": exc.margin,
        }
        code = ExitCode.INDETERMINATE
    except UnsupportedSizeError as exc:
        error = {"kind": "unsupported-size", "message": str(exc)}
        code = ExitCode.UNSUPPORTED_SIZE
    except VerificationError as exc:
        error = {"kind": "verification", "message": str(exc)}
        code = ExitCode.INPUT_ERROR
    except InputError as exc:
        error = {"kind": "input", "message": str(exc)}
        code = ExitCode.INPUT_ERROR

    envelope = {
        "command": args.command,
        "settings": {"eps": args.eps, "kmax": args.kmax, "seed": args.seed},
        "status": "ok" if error is None else "error",
        "verdict": payload.get("verdict"),
    }
    if error is None:
        envelope["inputs"] = payload.get("inputs", {})
        envelope["result"] = payload.get("result", {})
    else:
        envelope["error"] = error

    elapsed_ms = (time.perf_counter() - started) * 1000.0
    if args.json:
        print(json.dumps(envelope, indent=2, sort_keys=True))
    else:
        if error is not None:
            print(f"error ({error['kind']}): {error['message']}", file=sys.stderr)
        _print_human(envelope, elapsed_ms)
    return int(code)


if __name__ == "__main__":
    raise SystemExit(main())
