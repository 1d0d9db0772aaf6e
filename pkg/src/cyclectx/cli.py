"""``cyclectx`` command line: analyze, bounds, sample, demo.

Exit codes: 0 success, 2 validation or usage error, 1 internal error.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from . import __version__
from .classical import (MAX_BOUND_N, CorrelationData, jpd_exists, noncontextual_bound,
                        original_bell_check, suppes_zanotti_check)
from .demos import DEMOS, demo_document
from .errors import ContextualityError
from .io import load_scenario
from .quantum import (CONDITION_TOL, average, cycle_correlations, quantum_value,
                      theorem2_check)
from .sampler import SampleConfig, estimate_scenario
from .scenario import COMPATIBILITY_TOL, SignPattern, validate_compatibility

log = logging.getLogger("cyclectx")

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def round_floats(obj, digits=9):
    """Round every float to ``digits`` significant digits; non-finite becomes None."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, dict):
        return {k: round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, digits) for v in obj]
    return obj


def emit(doc, stream=None):
    stream = stream or sys.stdout
    json.dump(round_floats(doc), stream, indent=2)
    stream.write("\n")


def _source_checks(n, data: CorrelationData, source: str) -> dict:
    corr = data.cycle_vector()
    out = {"source": source, "data": data.to_dict(),
           "jpd_exists": jpd_exists(n, data).to_dict(),
           "suppes_zanotti": None, "original_bell": None}
    if n == 3 and None not in corr:
        c12, c23, c31 = corr
        out["suppes_zanotti"] = suppes_zanotti_check(c12, c23, c31).to_dict()
    if n == 4 and None not in corr:
        c12, c23, c34, c41 = corr
        out["original_bell"] = original_bell_check(c12, c34, c41, c23).to_dict()
    return out


def analyze(sf, signs=None, tolerance=COMPATIBILITY_TOL) -> dict:
    """Build the analysis report for a parsed scenario file."""
    s = sf.scenario
    signs = sf.signs if signs is None else signs
    if len(signs) != s.n:
        raise UsageError(f"--signs has {len(signs)} entries, scenario has n = {s.n}")
    compat = validate_compatibility(s, tolerance)
    if not compat.overall_ok:
        bad = ", ".join(f"{{{i + 1},{j + 1}}}" for i, j in compat.failures())
        raise ContextualityError(f"declared contexts are not compatible: {bad}")

    bound = noncontextual_bound(s.n, signs)
    theorem2, note = None, None
    if s.n != 4:
        note = "commutator-product test applies to the 4-cycle only"
    elif not signs.is_odd:
        note = f"sign pattern {signs} is even; the commutator-product test needs an odd pattern"
    else:
        theorem2 = theorem2_check(s.observables, signs, tol=tolerance).to_dict()

    qvalue, sources = None, []
    if sf.state is not None:
        qvalue = quantum_value(s, signs, sf.state, tol=tolerance)
        qdata = CorrelationData.from_cycle(
            list(cycle_correlations(s, sf.state, tol=tolerance)),
            [average(sf.state, o) for o in s.observables])
        sources.append(_source_checks(s.n, qdata, "state"))
    if sf.data is not None:
        sources.append(_source_checks(s.n, sf.data, "data"))

    return {
        "scenario": {
            "n": s.n,
            "dim": s.dim,
            "labels": [o.label for o in s.observables],
            "contexts": [[i + 1, j + 1] for i, j in s.contexts],
            "signs": str(signs),
            "has_state": sf.state is not None,
            "has_data": sf.data is not None,
        },
        "compatibility": compat.to_dict(),
        "classical_bound": bound.bound,
        "maximizing_assignment": list(bound.assignment),
        "quantum_value": qvalue,
        "theorem2": theorem2,
        "theorem2_note": note,
        "correlation_checks": sources,
        "violation": qvalue is not None and qvalue > bound.bound + CONDITION_TOL,
    }


def _parse_signs(text, n=None):
    try:
        signs = SignPattern.parse(text)
    except ContextualityError as exc:
        raise UsageError(str(exc)) from exc
    if n is not None and len(signs) != n:
        raise UsageError(f"--signs has {len(signs)} entries, expected {n}")
    return signs


def cmd_analyze(args):
    sf = load_scenario(args.file)
    signs = _parse_signs(args.signs) if args.signs else None
    emit(analyze(sf, signs, args.tolerance))


def cmd_bounds(args):
    if not 3 <= args.n <= MAX_BOUND_N:
        raise UsageError(f"--n must be between 3 and {MAX_BOUND_N}, got {args.n}")
    signs = _parse_signs(args.signs, args.n) if args.signs else SignPattern.canonical(args.n)
    emit(noncontextual_bound(args.n, signs).to_dict())


def cmd_sample(args):
    sf = load_scenario(args.file)
    if sf.state is None:
        raise UsageError(f"{args.file}: scenario has no state block to sample from")
    if args.shots < 1:
        raise UsageError("--shots must be >= 1")
    if not 0 <= args.seed < 2**64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    signs = _parse_signs(args.signs, sf.scenario.n) if args.signs else sf.signs
    emp = estimate_scenario(sf.scenario, sf.state, SampleConfig(args.seed, args.shots))
    doc = emp.to_dict()
    est, se = emp.value(signs)
    doc.update({"seed": args.seed, "signs": str(signs), "cycle_value": est,
                "cycle_value_error": se})
    emit(doc)


def cmd_demo(args):
    if args.name not in DEMOS:
        raise UsageError(f"unknown demo {args.name!r}; choose from {', '.join(DEMOS)}")
    out = Path(args.out or f"{args.name}.json")
    out.write_text(json.dumps(demo_document(args.name), indent=2) + "\n")
    print(f"wrote {out}", file=sys.stderr)


def build_parser():
    p = _Parser(prog="cyclectx", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="analyze a scenario file")
    a.add_argument("file")
    a.add_argument("--signs", help="comma-separated signs, e.g. +,+,+,-")
    a.add_argument("--tolerance", type=float, default=COMPATIBILITY_TOL,
                   help="commutator tolerance for declared contexts")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bounds", help="classical bound of a signed cycle expression")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--signs")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("sample", help="simulate context measurements")
    s.add_argument("file")
    s.add_argument("--shots", type=int, default=100_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--signs")
    s.set_defaults(func=cmd_sample)

    d = sub.add_parser("demo", help="write a bundled scenario file")
    d.add_argument("name")
    d.add_argument("--out")
    d.set_defaults(func=cmd_demo)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "tolerance", 0.0) < 0:
            raise UsageError("--tolerance must be nonnegative")
        args.func(args)
        return EXIT_OK
    except (UsageError, ContextualityError, OSError) as exc:
        print(f"cyclectx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        log.debug("internal error", exc_info=True)
        print(f"cyclectx: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
