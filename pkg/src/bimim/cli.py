"""Command-line entry point.

Exit status: 0 success, 1 usage or parse error, 2 infeasible or no partition,
3 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys

from . import FORMAT_VERSION, __version__
from . import io as fmt
from .builders import BUILDERS
from .cuts import decomposition_width
from .digraph import UndirectedGraph, grid_graph, power, underlying
from .distance import DistanceProblem, distance_dominates, is_distance_partition
from .lcvp import is_dq_partition, solve_lcvp
from .nbhd import enumerate_classes
from .oracle import BudgetExceeded, OracleBudget, brute_lcvp, brute_power, brute_sigma_rho, exact_bimimwidth
from .representations import (
    HConvexRep,
    PermutationRep,
    RootedDirPathRep,
    gen_grid_orientation,
    gen_p2_convex_grid,
    gen_tournament,
    is_adjusted,
    is_nice,
    is_reflexive,
    random_adjusted_permutation,
    random_adjusted_rdpath,
    random_nice_hconvex,
    random_reflexive_hdigraph,
    random_reflexive_interval,
    realize,
)
from .sigma_rho import dominates, solve_sigma_rho

EXIT_OK, EXIT_USAGE, EXIT_NONE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.record: dict = {}

    def field(self, key, value, text=None):
        self.record[key] = value
        if not self.as_json:
            print(text if text is not None else f"{key} {value}")

    def raw(self, text):
        if not self.as_json:
            sys.stdout.write(text)

    def flush(self, kind):
        if self.as_json:
            print(json.dumps({"command": kind, **self.record}, sort_keys=True))


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def _load(path, kind=None):
    text = _read(path)
    obj = fmt.parse_any(text) if kind is None else fmt.PARSERS[kind](text)
    return obj


def _load_problem(path):
    return fmt.parse_problem(_read(path))


def _vertex_list(arg):
    text = _read(arg) if os.path.exists(arg) else arg.replace(",", " ")
    toks = [t for line in text.splitlines() if not line.strip().startswith("#") for t in line.replace(",", " ").split()]
    try:
        return {int(t) for t in toks}
    except ValueError as e:
        raise UsageError(f"bad vertex list {arg!r}") from e


def _distance(args):
    if args.distance is not None and args.distance < 1:
        raise UsageError("--distance must be at least 1")
    return args.distance


def cmd_build(args, out):
    rep = _load(args.repfile)
    builder = BUILDERS[args.cls]
    try:
        report = builder(rep, verify=args.verify)
    except (TypeError, AttributeError) as e:
        raise UsageError(f"{args.cls} needs a matching representation file") from e
    text = fmt.format_bdecomp(report.decomposition, report.guarantee, report.measured)
    out.record["guarantee"] = report.guarantee
    if report.measured is not None:
        out.record["measured"] = report.measured
    out.record["bdecomp"] = text
    out.raw(text)
    return EXIT_OK


def cmd_width(args, out):
    g = _load(args.digraph, "digraph")
    bd = _load(args.bdecomp, "bdecomp")
    if bd.n != g.n:
        raise UsageError("decomposition and digraph sizes differ")
    out.field("width", decomposition_width(g, bd, args.measure))
    out.record["measure"] = args.measure
    return EXIT_OK


def cmd_solve(args, out):
    g = _load(args.digraph, "digraph")
    bd = _load(args.bdecomp, "bdecomp")
    prob = _load_problem(args.problem)
    if bd.n != g.n:
        raise UsageError("decomposition and digraph sizes differ")
    r = _distance(args)
    host = power(g, r) if r else g
    res = solve_sigma_rho(host, bd, prob)
    if not res.feasible:
        out.field("value", None, text="infeasible")
        return EXIT_NONE
    out.field("value", res.value)
    if args.witness:
        out.field("witness", sorted(res.witness), text="witness " + " ".join(map(str, sorted(res.witness))))
        if r:
            ok = distance_dominates(g, res.witness, DistanceProblem(r, prob), strict=args.strict_balls)
        else:
            ok = dominates(g, res.witness, prob)
        out.field("check", ok, text=f"check {str(ok).lower()}")
    return EXIT_OK


def _parts_text(parts):
    return [" ".join(map(str, sorted(p))) for p in parts]


def cmd_partition(args, out):
    g = _load(args.digraph, "digraph")
    bd = _load(args.bdecomp, "bdecomp")
    dq = _load(args.lcvp, "lcvp")
    if bd.n != g.n:
        raise UsageError("decomposition and digraph sizes differ")
    r = _distance(args)
    res = solve_lcvp(power(g, r) if r else g, bd, dq, witness=args.witness)
    out.field("exists", res.exists, text=f"exists {str(res.exists).lower()}")
    if not res.exists:
        return EXIT_NONE
    if args.witness:
        out.record["parts"] = [sorted(p) for p in res.parts]
        for k, line in enumerate(_parts_text(res.parts), 1):
            out.raw(f"part {k} {line}".rstrip() + "\n")
        if r:
            ok = is_distance_partition(g, res.parts, DistanceProblem(r, dq), strict=args.strict_balls)
        else:
            ok = is_dq_partition(g, res.parts, dq)
        out.field("check", ok, text=f"check {str(ok).lower()}")
    return EXIT_OK


def cmd_nec(args, out):
    g = _load(args.digraph, "digraph")
    a = _vertex_list(args.cutset)
    if any(not 0 <= v < g.n for v in a):
        raise UsageError("cut set names a vertex out of range")
    if args.d < 0:
        raise UsageError("d must be nonnegative")
    amask = sum(1 << v for v in a)
    inside = len(enumerate_classes(g, amask, args.d))
    outside = len(enumerate_classes(g, g.full_mask & ~amask, args.d))
    out.field("classes", inside)
    out.field("complement_classes", outside)
    return EXIT_OK


_RANDOM_HOSTS = {
    "p2": UndirectedGraph(2, [(0, 1)]),
    "c3": UndirectedGraph(3, [(0, 1), (1, 2), (0, 2)]),
    "k4-minus-edge": UndirectedGraph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
}


def cmd_gen(args, out):
    n, rng = args.n, random.Random(args.seed)
    fam = args.family
    if fam in ("grid-orientation", "tournament", "p2-convex-grid") and n < 2:
        raise UsageError("n must be at least 2")
    if n < 1:
        raise UsageError("n must be positive")
    if fam == "grid-orientation":
        rep, g = gen_grid_orientation(n)
        obj = g if args.digraph else rep
    elif fam == "tournament":
        obj = gen_tournament(n)
    elif fam == "p2-convex-grid":
        rep = gen_p2_convex_grid(n)
        obj = realize(rep) if args.digraph else rep
    elif fam == "random-reflexive-interval":
        obj = random_reflexive_interval(n, rng)
    elif fam == "random-adjusted-permutation":
        obj = random_adjusted_permutation(n, rng)
    elif fam == "random-adjusted-rdpath":
        obj = random_adjusted_rdpath(n, rng)
    elif fam == "random-reflexive-hdigraph":
        obj = random_reflexive_hdigraph(_RANDOM_HOSTS[args.host], n, rng)
    else:
        obj = random_nice_hconvex(_RANDOM_HOSTS[args.host], n, rng)
    if args.digraph and not hasattr(obj, "edges"):
        obj = realize(obj)
    text = fmt.format_any(obj)
    out.record["text"] = text
    out.raw(text)
    return EXIT_OK


def _grid_side(h) -> int | None:
    k = math.isqrt(h.n)
    return k if k >= 2 and k * k == h.n and h == grid_graph(k) else None


def cmd_check(args, out):
    rep = _load(args.repfile)
    if not hasattr(rep, "s") and not isinstance(rep, HConvexRep):
        raise UsageError("check expects a representation file")
    g = realize(rep)
    out.field("vertices", g.n)
    out.field("edges", len(g.edges))
    out.field("reflexive", is_reflexive(g), text=f"reflexive {str(is_reflexive(g)).lower()}")
    if isinstance(rep, (PermutationRep, RootedDirPathRep)):
        adj = is_adjusted(rep)
        out.field("adjusted", adj, text=f"adjusted {str(adj).lower()}")
    if isinstance(rep, HConvexRep):
        out.field("nice", is_nice(rep), text=f"nice {str(is_nice(rep)).lower()}")
    side = _grid_side(underlying(g))
    if side:
        out.field("underlying", f"grid {side}", text=f"underlying grid {side}")
    if args.realize:
        text = fmt.format_digraph(g)
        out.record["digraph"] = text
        out.raw(text)
    return EXIT_OK


def cmd_oracle(args, out):
    budget = OracleBudget(args.max_vertices, args.max_leaves, args.timeout)
    g = _load(args.digraph, "digraph")
    r = _distance(args) if args.task != "width" else None
    host = brute_power(g, r) if r else g
    if args.task == "width":
        out.field("width", exact_bimimwidth(g, budget))
        return EXIT_OK
    if args.spec is None:
        raise UsageError(f"oracle {args.task} needs a problem file")
    if args.task == "solve":
        value, sol = brute_sigma_rho(host, _load_problem(args.spec), budget)
        if value is None:
            out.field("value", None, text="infeasible")
            return EXIT_NONE
        out.field("value", value)
        out.field("witness", sorted(sol), text="witness " + " ".join(map(str, sorted(sol))))
        return EXIT_OK
    dq = _load(args.spec, "lcvp")
    parts = brute_lcvp(host, dq, budget)
    out.field("exists", parts is not None, text=f"exists {str(parts is not None).lower()}")
    if parts is None:
        return EXIT_NONE
    out.record["parts"] = [sorted(p) for p in parts]
    for k, line in enumerate(_parts_text(parts), 1):
        out.raw(f"part {k} {line}".rstrip() + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bimim", description="Bi-mim-width decompositions and locally checkable problems on digraphs.")
    p.add_argument("--version", action="version", version=f"bimim {__version__} (format {FORMAT_VERSION})")
    p.add_argument("--json", action="store_true", help="emit one JSON record per result")
    p.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    p.add_argument("--threads", type=int, default=1, help="worker count (runs are single-threaded)")
    # the same flags are accepted after the subcommand too
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **k: _add(*a, parents=[common], **k)

    s = sub.add_parser("build", help="decomposition from a representation")
    s.add_argument("cls", choices=sorted(BUILDERS))
    s.add_argument("repfile")
    s.add_argument("--verify", action="store_true", help="also measure the exact width")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("width", help="width of a decomposition")
    s.add_argument("digraph")
    s.add_argument("bdecomp")
    s.add_argument("--measure", choices=("bimim", "birank"), default="bimim")
    s.set_defaults(func=cmd_width)

    for name, func, spec in (("solve", cmd_solve, "problem"), ("partition", cmd_partition, "lcvp")):
        s = sub.add_parser(name, help=f"run the {spec} dynamic program")
        s.add_argument("digraph")
        s.add_argument("bdecomp")
        s.add_argument(spec)
        s.add_argument("--distance", type=int, metavar="R")
        s.add_argument("--strict-balls", action="store_true", help="check the witness with literal balls")
        s.add_argument("--witness", action="store_true")
        s.set_defaults(func=func)

    s = sub.add_parser("nec", help="count neighbourhood classes of a cut")
    s.add_argument("digraph")
    s.add_argument("cutset", help="file or comma-separated list of vertices")
    s.add_argument("d", type=int)
    s.set_defaults(func=cmd_nec)

    s = sub.add_parser("gen", help="generate an instance")
    s.add_argument(
        "family",
        choices=(
            "grid-orientation",
            "tournament",
            "p2-convex-grid",
            "random-reflexive-interval",
            "random-adjusted-permutation",
            "random-adjusted-rdpath",
            "random-reflexive-hdigraph",
            "random-nice-hconvex",
        ),
    )
    s.add_argument("n", type=int)
    s.add_argument("--host", choices=sorted(_RANDOM_HOSTS), default="p2")
    s.add_argument("--digraph", action="store_true", help="print the realized digraph instead")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("oracle", help="exhaustive reference answers")
    s.add_argument("task", choices=("solve", "partition", "width"))
    s.add_argument("digraph")
    s.add_argument("spec", nargs="?")
    s.add_argument("--distance", type=int, metavar="R")
    s.add_argument("--max-vertices", type=int, default=8)
    s.add_argument("--max-leaves", type=int, default=6)
    s.add_argument("--timeout", type=float)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("check", help="validate and describe a representation")
    s.add_argument("repfile")
    s.add_argument("--realize", action="store_true", help="also print the realized digraph")
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    out = _Out(args.json)
    try:
        code = args.func(args, out)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        out.record["error"] = str(e)
        out.flush(args.cmd)
        return EXIT_BUDGET
    except (UsageError, fmt.FormatError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    out.flush(args.cmd)
    return code


if __name__ == "__main__":
    sys.exit(main())
