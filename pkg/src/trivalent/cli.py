"""Command line front end.

Exit codes: 0 success, 1 semantic failure (failed check, failed
verification, count disagreement, unusable value), 2 malformed input
(unparseable file or arguments), 3 statement not applicable to the
given input.

Graphs come from a file argument or from ``--builtin``; builtin names
are tripod, theta, dumbbell, loop_with_leg and cycle:N.  The
MIURA_THREADS environment variable (a positive integer) caps how many
worker threads a multi-job invocation may use.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import semigraph
from .numbering import (
    BranchNumbering,
    check_prime,
    dumps_numbering,
    loads_numbering,
    numbering_to_json_obj,
    radii_of,
)
from .miura import check_pp004, miura_transform
from .search import EnumerationQuery, count, count_by_contraction, enumerate_numberings
from .semigraph import InvalidGraphError, StructureError, validate
from .verify import (
    TheoremReport,
    verify_figure_vector,
    verify_miura,
    verify_p048,
    verify_p048_structure,
)

PASS, FAIL, MALFORMED, NOT_APPLICABLE = 0, 1, 2, 3

BUILTINS = {
    "tripod": semigraph.tripod,
    "theta": semigraph.theta,
    "dumbbell": semigraph.dumbbell,
    "loop_with_leg": semigraph.loop_with_leg,
}


def worker_cap() -> int:
    raw = os.environ.get("MIURA_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        cap = int(raw)
    except ValueError:
        raise StructureError(f"MIURA_THREADS must be a positive integer, got {raw!r}")
    if cap < 1:
        raise StructureError(f"MIURA_THREADS must be a positive integer, got {raw!r}")
    return cap


def _load_graph(args) -> semigraph.MarkedSemiGraph:
    if args.builtin is not None and args.graph is not None:
        raise StructureError("give either a graph file or --builtin, not both")
    if args.builtin is not None:
        name = args.builtin
        if name in BUILTINS:
            return BUILTINS[name]()
        if name.startswith("cycle:"):
            try:
                n = int(name.split(":", 1)[1])
            except ValueError:
                raise StructureError(f"bad builtin {name!r}") from None
            return semigraph.cycle_with_legs(n)
        raise StructureError(f"unknown builtin {name!r}")
    if args.graph is None:
        raise StructureError("a graph file or --builtin is required")
    with open(args.graph, encoding="utf-8") as handle:
        return semigraph.loads_graph(handle.read())


def _parse_constraint(raw: str | None, p: int):
    if raw is None:
        return None
    raw = raw.strip()
    if not raw:
        return ()
    return tuple(int(part) % p for part in raw.split(","))


def _emit(obj):
    print(json.dumps(obj))


def cmd_validate(args) -> int:
    m = _load_graph(args)
    report = validate(m)
    _emit(report.to_json_obj())
    return PASS if report.valid else FAIL


def cmd_enumerate(args) -> int:
    m = _load_graph(args)
    p = check_prime(args.p)
    query = EnumerationQuery(
        p, args.kind, constraint=_parse_constraint(args.constraint, p), limit=args.limit
    )
    for numbering in enumerate_numberings(m, query):
        print(dumps_numbering(m, numbering))
    return PASS


def cmd_count(args) -> int:
    m = _load_graph(args)
    p = check_prime(args.p)
    query = EnumerationQuery(p, args.kind, mode="count")
    by_exponent = args.by_exponent
    if args.method == "both":
        jobs = (
            lambda: count(m, query, by_exponent=by_exponent),
            lambda: count_by_contraction(m, query, by_exponent=by_exponent),
        )
        if worker_cap() >= 2:
            with ThreadPoolExecutor(max_workers=2) as pool:
                futures = [pool.submit(job) for job in jobs]
                back, cont = (f.result() for f in futures)
        else:
            back, cont = jobs[0](), jobs[1]()
        agree = back.total == cont.total and back.by_exponent == cont.by_exponent
        _emit(
            {
                "backtracking": back.to_json_obj(),
                "contraction": cont.to_json_obj(),
                "agree": agree,
            }
        )
        return PASS if agree else FAIL
    if args.method == "contraction":
        report = count_by_contraction(m, query, by_exponent=by_exponent)
    else:
        report = count(m, query, by_exponent=by_exponent)
    _emit(report.to_json_obj())
    return PASS


def cmd_miura(args) -> int:
    with open(args.numbering, encoding="utf-8") as handle:
        numbering = loads_numbering(handle.read())
    m = _load_graph(args)
    if not isinstance(numbering, BranchNumbering):
        raise ValueError("miura expects a strict branch-numbering file")
    image = miura_transform(m, numbering)
    obj = numbering_to_json_obj(m, image)
    obj["radii"] = list(radii_of(m, image))
    _emit(obj)
    return PASS


def _report_exit(report: TheoremReport) -> int:
    _emit(report.to_json_obj())
    if not report.applicable:
        return NOT_APPLICABLE
    return PASS if report.passed else FAIL


def cmd_verify(args) -> int:
    if args.theorem == "figure":
        return _report_exit(verify_figure_vector())
    if args.p is None:
        raise StructureError(f"verify {args.theorem} requires --p")
    p = check_prime(args.p)
    if args.theorem == "pp004":
        result = check_pp004(p)
        report = TheoremReport(
            "pp004",
            {"p": p},
            claim="strictness is equivalent to balancedness of the image on the tripod census",
            observed=f"{len(result.counterexamples)} counterexamples",
            passed=result.holds,
            witness=result.counterexamples,
        )
        return _report_exit(report)
    m = _load_graph(args)
    if args.theorem == "p048":
        return _report_exit(verify_p048(m, p))
    if args.theorem == "p048_structure":
        return _report_exit(verify_p048_structure(m, p))
    return _report_exit(verify_miura(m, p))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trivalent",
        description="numberings of 3-regular semi-graphs and their Miura transform",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_args(p):
        p.add_argument("graph", nargs="?", help="graph JSON file")
        p.add_argument("--builtin", help="tripod, theta, dumbbell, loop_with_leg, cycle:N")

    p_validate = sub.add_parser("validate", help="run the semantic checks")
    add_graph_args(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    p_enum = sub.add_parser("enumerate", help="stream numberings as JSON lines")
    p_enum.add_argument("--p", type=int, required=True)
    p_enum.add_argument("--kind", choices=("strict", "balanced"), required=True)
    p_enum.add_argument("--constraint", help="comma-separated exponents or radii")
    p_enum.add_argument("--limit", type=int)
    add_graph_args(p_enum)
    p_enum.set_defaults(func=cmd_enumerate)

    p_count = sub.add_parser("count", help="count numberings")
    p_count.add_argument("--p", type=int, required=True)
    p_count.add_argument("--kind", choices=("strict", "balanced"), required=True)
    p_count.add_argument("--by-exponent", action="store_true")
    p_count.add_argument(
        "--method", choices=("backtracking", "contraction", "both"), default="backtracking"
    )
    add_graph_args(p_count)
    p_count.set_defaults(func=cmd_count)

    p_miura = sub.add_parser("miura", help="transform a strict numbering")
    p_miura.add_argument("numbering", help="strict numbering JSON file")
    add_graph_args(p_miura)
    p_miura.set_defaults(func=cmd_miura)

    p_verify = sub.add_parser("verify", help="check one of the built-in statements")
    p_verify.add_argument(
        "theorem", choices=("pp004", "p048", "p048_structure", "miura", "figure")
    )
    p_verify.add_argument("--p", type=int)
    add_graph_args(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StructureError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MALFORMED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MALFORMED
    except (InvalidGraphError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL


def entry():
    sys.exit(main())
