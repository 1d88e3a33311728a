"""``thetaspan`` command-line interface.

Exit codes: 0 success, 1 I/O or parse error, 2 validation / domain error,
3 internal error (failed self-check, disconnected graph, bug).  Errors are
reported on stderr as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import adversarial, bounds, io
from .errors import (
    GadgetError,
    GeneralPositionError,
    ParseError,
    ThetaSpanError,
)
from .graph import build_theta_graph
from .metrics import spanning_ratio
from .routing import routing_ratio, theta_route

EXIT_OK, EXIT_IO, EXIT_VALIDATION, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(ThetaSpanError, ValueError):
    pass


def _threads(args) -> int:
    if args.threads is not None:
        n = args.threads
    else:
        env = os.environ.get("THETASPAN_THREADS", "")
        try:
            n = int(env) if env else 1
        except ValueError:
            raise UsageError(f"THETASPAN_THREADS must be an integer, got {env!r}") from None
    if n < 1:
        raise UsageError("thread count must be >= 1")
    return n


def _pairs(spec: str):
    if spec == "all":
        return "all"
    try:
        n = int(spec)
    except ValueError:
        raise UsageError(f"--pairs must be 'all' or a positive integer, got {spec!r}") from None
    if n < 1:
        raise UsageError("--pairs must be positive")
    return n


def _graph_from_input(args):
    points, g = io.load_points_or_graph(args.input)
    if g is not None:
        if args.m is not None and args.m != g.m:
            raise UsageError(f"--m {args.m} disagrees with the graph file (m={g.m})")
        return g
    if args.m is None:
        raise UsageError("--m is required when the input is a point set")
    return build_theta_graph(points, args.m, strict=not args.waive)


def _m_range(text: str) -> list[int]:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise UsageError(f"--m-range expects LO..HI, got {text!r}") from None
    if lo > hi:
        raise UsageError("--m-range: LO must not exceed HI")
    return list(range(lo, hi + 1))


# ---------------------------------------------------------------------------
# commands


def cmd_build(args) -> int:
    g = _graph_from_input(args)
    io.write_text(args.output, io.graph_to_json(g))
    return EXIT_OK


def cmd_spanning(args) -> int:
    g = _graph_from_input(args)
    per_pair = args.per_pair or args.format == "csv"
    rep = spanning_ratio(g, _pairs(args.pairs), args.seed, per_pair=per_pair,
                         threads=_threads(args))
    if args.format == "csv":
        text = io.to_csv(rep.per_pair, io.SPANNING_COLUMNS)
    else:
        doc = {"m": g.m, "n": g.n, "max_ratio": rep.max_ratio,
               "witness": list(rep.witness_pair), "n_pairs": rep.n_pairs}
        if args.per_pair:
            doc["per_pair"] = rep.per_pair
        text = io.dumps(doc)
    io.write_text(args.output, text)
    return EXIT_OK


def cmd_route(args) -> int:
    g = _graph_from_input(args)
    if (args.source is None) != (args.target is None):
        raise UsageError("--source and --target go together")
    if args.source is not None:
        r = theta_route(g, args.source, args.target, args.step_limit, args.direct)
        io.write_text(args.output, io.dumps(
            {"vertices": list(r.vertices), "length": r.length, "status": r.status}))
        return EXIT_OK
    per_pair = args.per_pair or args.format == "csv"
    rep = routing_ratio(g, _pairs(args.pairs), args.seed, args.step_limit, args.direct,
                        per_pair=per_pair, threads=_threads(args))
    if args.format == "csv":
        text = io.to_csv(rep.per_pair, io.ROUTING_COLUMNS)
    else:
        doc = {"m": g.m, "n": g.n, "max_ratio": rep.max_ratio,
               "witness": list(rep.witness_pair),
               "max_ratio_euclid": rep.max_ratio_euclid,
               "witness_euclid": list(rep.witness_euclid) if rep.witness_euclid else None,
               "n_pairs": rep.n_pairs, "failures": rep.failures}
        if args.per_pair:
            doc["per_pair"] = rep.per_pair
        text = io.dumps(doc)
    io.write_text(args.output, text)
    return EXIT_OK


def cmd_bounds(args) -> int:
    if (args.m is None) == (args.m_range is None):
        raise UsageError("give exactly one of --m and --m-range")
    ms = [args.m] if args.m is not None else _m_range(args.m_range)
    rows = [bounds.bounds_record(m, args.legacy_table).row() for m in ms]
    if args.format == "csv":
        text = io.to_csv(rows, io.BOUNDS_COLUMNS)
    else:
        for r in rows:
            for key in ("ub_route", "legacy_rs"):
                r[key] = io.finite_or_none(r[key])
        text = io.dumps(rows)
    io.write_text(args.output, text)
    return EXIT_OK


def cmd_verify_order(args) -> int:
    rep = bounds.verify_partial_order(args.kmax)
    if args.format == "json":
        doc = {"summary": rep.summary(), "ok": rep.ok, "inequalities": [
            {"label": r.label, "k_min": r.k_min, "k_max": r.k_max, "holds": r.holds,
             "min_margin": r.min_margin, "argmin_k": r.argmin_k,
             "rechecked": r.rechecked, "violations": r.violations}
            for r in rep.results]}
        text = io.dumps(doc)
    else:
        lines = [rep.summary()]
        for r in rep.results:
            lines.append(f"({r.label}) k={r.k_min}..{r.k_max} "
                         f"{'holds' if r.holds else 'VIOLATED'} "
                         f"min_margin={r.min_margin:.3e} at k={r.argmin_k}")
        text = "\n".join(lines) + "\n"
    io.write_text(args.output, text)
    return EXIT_OK if rep.ok else EXIT_VALIDATION


def cmd_gen(args) -> int:
    out = adversarial.generate(args.family, args.k, args.epsilon, args.cycles)
    io.write_text(args.output, io.points_to_json(out.points))
    if args.output not in (None, "-"):
        meta = out.metadata()
        meta["labels"] = out.labels
        meta["intended_path"] = list(out.intended_path) if out.intended_path else None
        io.metadata_path(args.output).write_text(io.dumps(meta))
    return EXIT_OK


def cmd_random(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    rng = np.random.Generator(np.random.PCG64(args.seed))
    io.write_text(args.output, io.points_to_json(rng.random((args.n, 2))))
    return EXIT_OK


# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thetaspan", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=("json", "csv"), default="json"):
        sp.add_argument("--output", "-o", default=None, help="output file (default stdout)")
        sp.add_argument("--format", choices=fmt, default=default)
        sp.add_argument("--threads", type=int, default=None,
                        help="worker threads (default $THETASPAN_THREADS or 1)")

    def graph_input(sp):
        sp.add_argument("--input", "-i", required=True, help="point-set or graph JSON")
        sp.add_argument("--m", type=int, default=None, help="number of cones")
        sp.add_argument("--waive", action="store_true",
                        help="skip the general-position check (deterministic tie-breaking)")

    sp = sub.add_parser("build", help="build the theta-graph of a point set")
    graph_input(sp)
    common(sp, ("json",))
    sp.set_defaults(func=cmd_build)

    for name, func in (("spanning", cmd_spanning), ("route", cmd_route)):
        sp = sub.add_parser(name, help=f"{name} ratio report")
        graph_input(sp)
        common(sp)
        sp.add_argument("--pairs", default="all", help="'all' or a sample size")
        sp.add_argument("--seed", type=int, default=0, help="seed for pair sampling")
        sp.add_argument("--per-pair", action="store_true", help="include per-pair rows")
        sp.set_defaults(func=func)
        if name == "route":
            sp.add_argument("--source", type=int, default=None)
            sp.add_argument("--target", type=int, default=None)
            sp.add_argument("--step-limit", type=int, default=None, help="default 10n")
            sp.add_argument("--direct", choices=("cone", "any"), default="cone",
                            help="which edges count as a direct edge to the target")

    sp = sub.add_parser("bounds", help="closed-form bounds per m")
    sp.add_argument("--m", type=int, default=None)
    sp.add_argument("--m-range", default=None, help="LO..HI, e.g. 6..30")
    sp.add_argument("--legacy-table", action="store_true",
                    help="use the summary-table routing formula for 4k+3/4k+5")
    common(sp, default="csv")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("verify-order", help="check the partial order between families")
    sp.add_argument("--kmax", type=int, default=1000)
    common(sp, ("text", "json"), default="text")
    sp.set_defaults(func=cmd_verify_order)

    sp = sub.add_parser("gen", help="generate an adversarial gadget")
    sp.add_argument("--family", required=True,
                    help="4k+2, 4k+3, 4k+4, 4k+5; with --cycles: 4k+4 or theta10")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--epsilon", type=float, default=None)
    sp.add_argument("--cycles", type=int, default=None, help="build the routing spiral")
    common(sp, ("json",))
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("random", help="uniform random points in the unit square")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, ("json",))
    sp.set_defaults(func=cmd_random)
    return p


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, (ParseError, OSError)):
        return EXIT_IO
    if isinstance(exc, (GadgetError, AssertionError)):
        return EXIT_INTERNAL
    if isinstance(exc, (ValueError, IndexError)):
        return EXIT_VALIDATION
    return EXIT_INTERNAL


def _error_json(exc: BaseException, code: int) -> str:
    doc = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    if isinstance(exc, GeneralPositionError):
        doc["violations"] = [
            {"kind": v.kind, "vertices": list(v.vertices), "detail": v.detail}
            for v in exc.report.violations
        ]
    if isinstance(exc, ParseError) and exc.offset is not None:
        doc["offset"] = exc.offset
    return json.dumps(doc)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # every failure becomes an exit code + JSON diagnostic
        code = _exit_code(exc)
        print(_error_json(exc, code), file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
