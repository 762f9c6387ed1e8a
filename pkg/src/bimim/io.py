"""Line-based text formats for digraphs, decompositions, problems and representations.

Every format ignores blank lines and lines starting with ``#``. Writers start
with a ``# format bimim <version>`` line.
"""

from __future__ import annotations

from . import FORMAT_VERSION
from .cuts import BranchDecomposition
from .digraph import Digraph, UndirectedGraph
from .lcvp import LcvpMatrix
from .representations import (
    HConvexRep,
    HDigraphRep,
    HSubdivision,
    IntervalRep,
    PermutationRep,
    RootedDirPathRep,
)
from .sigma_rho import FiniteOrCofinite, SigmaRhoProblem


class FormatError(ValueError):
    pass


HEADER = f"# format bimim {FORMAT_VERSION}"


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((no, line.split()))
    return out


def _ints(tokens, no, count=None):
    try:
        vals = [int(x) for x in tokens]
    except ValueError as e:
        raise FormatError(f"line {no}: expected integers, got {' '.join(tokens)!r}") from e
    if count is not None and len(vals) != count:
        raise FormatError(f"line {no}: expected {count} integers, got {len(vals)}")
    return vals


def _expect_header(lines, word, nargs):
    if not lines or lines[0][1][0] != word:
        raise FormatError(f"expected header '{word}'")
    no, toks = lines[0]
    return _ints(toks[1:], no, nargs)


def _wrap(body: list[str]) -> str:
    return "\n".join([HEADER, *body]) + "\n"


def kind_of(text: str) -> str:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty input")
    return lines[0][1][0]


# ---------------------------------------------------------------- graphs


def _parse_edges(lines, header, n):
    edges = []
    for no, toks in lines:
        if toks[0] != "e":
            raise FormatError(f"line {no}: expected 'e <u> <v>' in {header} block")
        u, v = _ints(toks[1:], no, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"line {no}: vertex out of range 0..{n - 1}")
        edges.append((u, v))
    return edges


def parse_digraph(text: str) -> Digraph:
    lines = _lines(text)
    (n,) = _expect_header(lines, "digraph", 1)
    edges = _parse_edges(lines[1:], "digraph", n)
    if len(set(edges)) != len(edges):
        raise FormatError("duplicate edge")
    return Digraph(n, edges)


def format_digraph(g: Digraph) -> str:
    return _wrap([f"digraph {g.n}", *(f"e {u} {v}" for u, v in sorted(g.edges))])


def parse_graph(text: str) -> UndirectedGraph:
    lines = _lines(text)
    (n,) = _expect_header(lines, "graph", 1)
    edges = _parse_edges(lines[1:], "graph", n)
    try:
        return UndirectedGraph(n, edges)
    except ValueError as e:
        raise FormatError(str(e)) from e


def _graph_block(h: UndirectedGraph) -> list[str]:
    return [f"graph {h.n}", *(f"e {u} {v}" for u, v in h.sorted_edges())]


def format_graph(h: UndirectedGraph) -> str:
    return _wrap(_graph_block(h))


# --------------------------------------------------------- decompositions


def parse_bdecomp(text: str) -> BranchDecomposition:
    lines = _lines(text)
    (m,) = _expect_header(lines, "bdecomp", 1)
    edges, leaves = [], {}
    for no, toks in lines[1:]:
        if toks[0] == "te":
            edges.append(tuple(_ints(toks[1:], no, 2)))
        elif toks[0] == "leaf":
            node, v = _ints(toks[1:], no, 2)
            if v in leaves:
                raise FormatError(f"line {no}: vertex {v} mapped twice")
            leaves[v] = node
        else:
            raise FormatError(f"line {no}: unknown record {toks[0]!r}")
    if sorted(leaves) != list(range(len(leaves))):
        raise FormatError("leaf records must map vertices 0..n-1")
    try:
        return BranchDecomposition(m, edges, [leaves[v] for v in range(len(leaves))])
    except ValueError as e:
        raise FormatError(str(e)) from e


def format_bdecomp(bd: BranchDecomposition, guarantee: int | None = None, measured: int | None = None) -> str:
    body = [f"bdecomp {bd.num_nodes}"]
    if guarantee is not None:
        body.insert(0, f"# guarantee {guarantee}")
    if measured is not None:
        body.insert(1 if guarantee is not None else 0, f"# measured {measured}")
    body += [f"te {x} {y}" for x, y in bd.tree_edges]
    body += [f"leaf {node} {v}" for v, node in enumerate(bd.leaf_of)]
    return _wrap(body)


# ---------------------------------------------------------------- problems


def _parse_set(mode: str, tokens, no) -> FiniteOrCofinite:
    if mode not in ("fin", "cof"):
        raise FormatError(f"line {no}: set mode must be fin or cof, got {mode!r}")
    try:
        return FiniteOrCofinite(mode, frozenset(_ints(tokens, no)))
    except ValueError as e:
        raise FormatError(f"line {no}: {e}") from e


def _format_set(mu: FiniteOrCofinite) -> str:
    return " ".join([mu.mode, *map(str, sorted(mu.elems))])


_ROLES = ("sigma+", "sigma-", "rho+", "rho-")


def parse_problem(text: str) -> SigmaRhoProblem:
    got = {}
    for no, toks in _lines(text):
        key = toks[0]
        if key in _ROLES:
            if len(toks) < 2:
                raise FormatError(f"line {no}: missing set mode")
            got[key] = _parse_set(toks[1], toks[2:], no)
        elif key == "objective":
            if len(toks) != 2:
                raise FormatError(f"line {no}: expected 'objective min|max|exists'")
            got[key] = toks[1]
        else:
            raise FormatError(f"line {no}: unknown record {key!r}")
    missing = [k for k in (*_ROLES, "objective") if k not in got]
    if missing:
        raise FormatError(f"missing records: {', '.join(missing)}")
    try:
        return SigmaRhoProblem(got["sigma+"], got["sigma-"], got["rho+"], got["rho-"], got["objective"])
    except ValueError as e:
        raise FormatError(str(e)) from e


def format_problem(p: SigmaRhoProblem) -> str:
    sets = (p.sigma_out, p.sigma_in, p.rho_out, p.rho_in)
    return _wrap([*(f"{k} {_format_set(m)}" for k, m in zip(_ROLES, sets)), f"objective {p.objective}"])


def parse_lcvp(text: str) -> LcvpMatrix:
    """Indices in ``m <i> <j>`` records run from 1 to q."""
    lines = _lines(text)
    (q,) = _expect_header(lines, "lcvp", 1)
    if q < 1:
        raise FormatError("q must be at least 1")
    cells = {}
    for no, toks in lines[1:]:
        if toks[0] != "m" or len(toks) < 5:
            raise FormatError(f"line {no}: expected 'm <i> <j> out:<mode> ... in:<mode> ...'")
        i, j = _ints(toks[1:3], no, 2)
        if not (1 <= i <= q and 1 <= j <= q):
            raise FormatError(f"line {no}: index out of range 1..{q}")
        rest = toks[3:]
        cut = next((k for k, t in enumerate(rest) if t.startswith("in:")), None)
        if not rest[0].startswith("out:") or cut is None:
            raise FormatError(f"line {no}: need out: and in: parts")
        out = _parse_set(rest[0][4:], rest[1:cut], no)
        inn = _parse_set(rest[cut][3:], rest[cut + 1 :], no)
        if (i, j) in cells:
            raise FormatError(f"line {no}: entry ({i},{j}) given twice")
        cells[(i, j)] = (out, inn)
    if len(cells) != q * q:
        raise FormatError(f"expected {q * q} matrix entries, got {len(cells)}")
    return LcvpMatrix.from_rows([[cells[(i, j)] for j in range(1, q + 1)] for i in range(1, q + 1)])


def format_lcvp(dq: LcvpMatrix) -> str:
    body = [f"lcvp {dq.q}"]
    for i, row in enumerate(dq.entries, 1):
        for j, (o, n) in enumerate(row, 1):
            body.append(f"m {i} {j} out:{_format_set(o)} in:{_format_set(n)}")
    return _wrap(body)


# --------------------------------------------------------- representations


def _vertex_rows(lines, n, width, tag="v"):
    rows = []
    for no, toks in lines:
        if toks[0] != tag:
            raise FormatError(f"line {no}: expected '{tag}' record")
        rows.append(_ints(toks[1:], no, width))
    if len(rows) != n:
        raise FormatError(f"expected {n} vertex records, got {len(rows)}")
    return rows


def parse_intervals(text: str) -> IntervalRep:
    lines = _lines(text)
    (n,) = _expect_header(lines, "intervals", 1)
    rows = _vertex_rows(lines[1:], n, 4)
    try:
        return IntervalRep([(a, b) for a, b, _, _ in rows], [(c, d) for _, _, c, d in rows])
    except ValueError as e:
        raise FormatError(str(e)) from e


def format_intervals(rep: IntervalRep) -> str:
    return _wrap([f"intervals {rep.n}", *(f"v {s[0]} {s[1]} {t[0]} {t[1]}" for s, t in zip(rep.s, rep.t))])


def parse_perm(text: str) -> PermutationRep:
    lines = _lines(text)
    (n,) = _expect_header(lines, "perm", 1)
    rows = _vertex_rows(lines[1:], n, 4)
    return PermutationRep([(a, b) for a, b, _, _ in rows], [(c, d) for _, _, c, d in rows])


def format_perm(rep: PermutationRep) -> str:
    return _wrap([f"perm {rep.n}", *(f"v {s[0]} {s[1]} {t[0]} {t[1]}" for s, t in zip(rep.s, rep.t))])


def parse_rdpath(text: str) -> RootedDirPathRep:
    lines = _lines(text)
    m, root = _expect_header(lines, "rdpath", 2)
    if not 0 <= root < m:
        raise FormatError("root out of range")
    parent: list[int | None] = [None] * m
    rows = []
    for no, toks in lines[1:]:
        if toks[0] == "tp":
            x, p = _ints(toks[1:], no, 2)
            if not (0 <= x < m and 0 <= p < m) or x == root:
                raise FormatError(f"line {no}: bad tree arc")
            parent[x] = p
        elif toks[0] == "v":
            rows.append(_ints(toks[1:], no, 4))
        else:
            raise FormatError(f"line {no}: unknown record {toks[0]!r}")
    try:
        return RootedDirPathRep(parent, [(a, b) for a, b, _, _ in rows], [(c, d) for _, _, c, d in rows])
    except ValueError as e:
        raise FormatError(str(e)) from e


def format_rdpath(rep: RootedDirPathRep) -> str:
    body = [f"rdpath {rep.num_nodes} {rep.root}"]
    body += [f"tp {x} {p}" for x, p in enumerate(rep.parent) if p is not None]
    body += [f"v {s[0]} {s[1]} {t[0]} {t[1]}" for s, t in zip(rep.s, rep.t)]
    return _wrap(body)


def _node_list(token: str, prefix: str, no: int) -> frozenset[int]:
    if not token.startswith(prefix):
        raise FormatError(f"line {no}: expected {prefix}<nodes>")
    body = token[len(prefix) :]
    return frozenset(_ints(body.split(","), no)) if body else frozenset()


def _join(nodes) -> str:
    return ",".join(map(str, sorted(nodes)))


def _parse_host_block(lines):
    """Split off the embedded graph block and the sub records; returns (subdivision, remaining lines)."""
    if not lines or lines[0][1][0] != "graph":
        raise FormatError("expected an embedded 'graph' block after the header")
    k = 1
    while k < len(lines) and lines[k][1][0] == "e":
        k += 1
    host = parse_graph("\n".join(" ".join(t) for _, t in lines[:k]))
    counts = [0] * len(host.sorted_edges())
    while k < len(lines) and lines[k][1][0] == "sub":
        no, toks = lines[k]
        idx, c = _ints(toks[1:], no, 2)
        if not 0 <= idx < len(counts):
            raise FormatError(f"line {no}: host edge index out of range")
        counts[idx] = c
        k += 1
    try:
        return HSubdivision.from_counts(host, counts), lines[k:]
    except ValueError as e:
        raise FormatError(str(e)) from e


def _host_lines(sub: HSubdivision) -> list[str]:
    return [*_graph_block(sub.host), *(f"sub {k} {c}" for k, c in enumerate(sub.counts) if c)]


def parse_hdigraph(text: str) -> HDigraphRep:
    lines = _lines(text)
    _expect_header(lines, "hdigraph", 0)
    sub, rest = _parse_host_block(lines[1:])
    s, t = [], []
    for no, toks in rest:
        if toks[0] != "v" or len(toks) != 3:
            raise FormatError(f"line {no}: expected 'v S:<nodes> T:<nodes>'")
        s.append(_node_list(toks[1], "S:", no))
        t.append(_node_list(toks[2], "T:", no))
    try:
        return HDigraphRep(sub, s, t)
    except ValueError as e:
        raise FormatError(str(e)) from e


def format_hdigraph(rep: HDigraphRep) -> str:
    """Nodes are renumbered to the canonical layout implied by the ``sub`` records."""
    sub, mp = rep.sub.canonical()
    body = ["hdigraph", *_host_lines(sub)]
    body += [f"v S:{_join(mp[x] for x in s)} T:{_join(mp[x] for x in t)}" for s, t in zip(rep.s, rep.t)]
    return _wrap(body)


def parse_hconvex(text: str) -> HConvexRep:
    lines = _lines(text)
    _expect_header(lines, "hconvex", 0)
    sub, rest = _parse_host_block(lines[1:])
    outs, ins = [], []
    for no, toks in rest:
        if toks[0] != "b" or len(toks) != 3:
            raise FormatError(f"line {no}: expected 'b out:<nodes> in:<nodes>'")
        outs.append(_node_list(toks[1], "out:", no))
        ins.append(_node_list(toks[2], "in:", no))
    try:
        return HConvexRep(sub, outs, ins)
    except ValueError as e:
        raise FormatError(str(e)) from e


def format_hconvex(rep: HConvexRep) -> str:
    sub, mp = rep.sub.canonical()
    body = ["hconvex", *_host_lines(sub)]
    body += [f"b out:{_join(mp[x] for x in o)} in:{_join(mp[x] for x in i)}" for o, i in zip(rep.out_sets, rep.in_sets)]
    return _wrap(body)


PARSERS = {
    "digraph": parse_digraph,
    "graph": parse_graph,
    "bdecomp": parse_bdecomp,
    "lcvp": parse_lcvp,
    "intervals": parse_intervals,
    "perm": parse_perm,
    "rdpath": parse_rdpath,
    "hdigraph": parse_hdigraph,
    "hconvex": parse_hconvex,
}

REP_KINDS = ("intervals", "perm", "rdpath", "hdigraph", "hconvex")


def parse_any(text: str):
    kind = kind_of(text)
    if kind in _ROLES or kind == "objective":
        return parse_problem(text)
    if kind not in PARSERS:
        raise FormatError(f"unknown file kind {kind!r}")
    return PARSERS[kind](text)


def format_any(obj) -> str:
    for cls, fn in (
        (Digraph, format_digraph),
        (UndirectedGraph, format_graph),
        (BranchDecomposition, format_bdecomp),
        (SigmaRhoProblem, format_problem),
        (LcvpMatrix, format_lcvp),
        (IntervalRep, format_intervals),
        (PermutationRep, format_perm),
        (RootedDirPathRep, format_rdpath),
        (HDigraphRep, format_hdigraph),
        (HConvexRep, format_hconvex),
    ):
        if isinstance(obj, cls):
            return fn(obj)
    raise TypeError(f"no text format for {type(obj).__name__}")
