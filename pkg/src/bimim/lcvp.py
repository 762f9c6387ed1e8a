"""Directed locally checkable vertex-partition problems."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from . import dp
from .cuts import BranchDecomposition
from .digraph import Digraph, mask_of
from .sigma_rho import NAT, FiniteOrCofinite, SigmaRhoProblem, catalog_problem, d_value

Entry = tuple[FiniteOrCofinite, FiniteOrCofinite]


@dataclass(frozen=True)
class LcvpMatrix:
    """``entries[i][j] = (out set, in set)`` bounding what a part-i vertex sees in part j."""

    entries: tuple[tuple[Entry, ...], ...]

    def __post_init__(self):
        q = len(self.entries)
        if q < 1 or any(len(row) != q for row in self.entries):
            raise ValueError("matrix must be q x q with q >= 1")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Entry]]) -> LcvpMatrix:
        return cls(tuple(tuple((a, b) for a, b in row) for row in rows))

    @property
    def q(self) -> int:
        return len(self.entries)

    @property
    def d(self) -> int:
        return max(d_value(m) for row in self.entries for pair in row for m in pair)

    def accepts(self, i: int, out_counts: Sequence[int], in_counts: Sequence[int]) -> bool:
        row = self.entries[i]
        return all(out_counts[j] in row[j][0] and in_counts[j] in row[j][1] for j in range(self.q))


def _part_masks(parts) -> list[int]:
    return [p if isinstance(p, int) else mask_of(p) for p in parts]


def is_dq_partition(g: Digraph, parts, dq: LcvpMatrix) -> bool:
    masks = _part_masks(parts)
    if len(masks) != dq.q:
        raise ValueError(f"expected {dq.q} parts, got {len(masks)}")
    seen = 0
    for m in masks:
        if m & seen:
            raise ValueError("parts overlap")
        seen |= m
    if seen != g.full_mask:
        raise ValueError("parts do not cover the vertex set")
    for i, m in enumerate(masks):
        for v in g.vertices:
            if m >> v & 1:
                outs = [(g.out_mask[v] & x).bit_count() for x in masks]
                ins = [(g.in_mask[v] & x).bit_count() for x in masks]
                if not dq.accepts(i, outs, ins):
                    return False
    return True


def homomorphism_matrix(h: Digraph) -> LcvpMatrix:
    """Part i may send arcs to part j only along (i, j) in ``h`` and receive them only along (j, i)."""
    zero = FiniteOrCofinite.finite(0)
    return LcvpMatrix.from_rows(
        [[(NAT if h.has_edge(i, j) else zero, NAT if h.has_edge(j, i) else zero) for j in range(h.n)] for i in range(h.n)]
    )


def tournaments(k: int):
    """Every orientation of the complete graph on ``k`` vertices."""
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    for flips in product((False, True), repeat=len(pairs)):
        yield Digraph(k, [(j, i) if f else (i, j) for (i, j), f in zip(pairs, flips)])


def catalog_lcvp(name: str, **params) -> LcvpMatrix:
    """Named partition problems. Parameters: ``h`` (Digraph), ``k1``, ``k2``, ``problem`` (SigmaRhoProblem or catalog name)."""
    at_least, at_most = FiniteOrCofinite.at_least, FiniteOrCofinite.at_most

    def need(key):
        if key not in params or params[key] is None:
            raise ValueError(f"{name!r} needs parameter {key}")
        return params[key]

    if name == "h-homomorphism":
        h = need("h")
        if not isinstance(h, Digraph):
            raise ValueError("h must be a Digraph")
        return homomorphism_matrix(h)
    if name == "exists-sigma-rho-set":
        p = need("problem")
        if isinstance(p, str):
            p = catalog_problem(p, k=params.get("k"), l=params.get("l"))
        return LcvpMatrix.from_rows([[(p.sigma_out, p.sigma_in), (NAT, NAT)], [(p.rho_out, p.rho_in), (NAT, NAT)]])
    full = (NAT, NAT)
    if name == "out-in-degree-partition":
        k1, k2 = need("k1"), need("k2")
        return LcvpMatrix.from_rows([[(at_least(k1), NAT), full], [full, (NAT, at_least(k2))]])
    if name == "out-out-degree-partition":
        k1, k2 = need("k1"), need("k2")
        return LcvpMatrix.from_rows([[(at_least(k1), NAT), full], [full, (at_least(k2), NAT)]])
    if name == "max-out-degree-partition":
        k1, k2 = need("k1"), need("k2")
        return LcvpMatrix.from_rows([[(at_most(k1), NAT), full], [full, (at_most(k2), NAT)]])
    if name == "out-in-bipartite-partition":
        k1, k2 = need("k1"), need("k2")
        return LcvpMatrix.from_rows([[full, (at_least(k1), NAT)], [(NAT, at_least(k2)), full]])
    if name == "out-out-bipartite-partition":
        k1, k2 = need("k1"), need("k2")
        return LcvpMatrix.from_rows([[full, (at_least(k1), NAT)], [(at_least(k2), NAT), full]])
    if name == "2-out-coloring":
        e = (FiniteOrCofinite.cofinite(0), NAT)
        return LcvpMatrix.from_rows([[e, e], [e, e]])
    raise ValueError(f"unknown partition problem {name!r}")


LCVP_NAMES = (
    "h-homomorphism",
    "exists-sigma-rho-set",
    "out-in-degree-partition",
    "out-out-degree-partition",
    "max-out-degree-partition",
    "out-in-bipartite-partition",
    "out-out-bipartite-partition",
    "2-out-coloring",
)


@dataclass(frozen=True)
class LcvpResult:
    exists: bool
    parts: tuple[frozenset[int], ...] | None = None


def _leaf_checker(g: Digraph, dq: LcvpMatrix):
    q = dq.q

    def placements(node: dp.Node, qo: int):
        """Parts ``i`` (with their inside tuple index) that are valid for v against outside tuple ``qo``."""
        v = node.vertex
        n_in, n_out = len(node.inside), len(node.outside)
        empty, single = node.inside.index_of(0), node.inside.index_of(1 << v)
        loop = 1 if g.has_loop(v) else 0
        ys = [node.outside.witnesses[(qo // n_out**j) % n_out] for j in range(q)]
        outs = [(g.out_mask[v] & y).bit_count() for y in ys]
        ins = [(g.in_mask[v] & y).bit_count() for y in ys]
        base = sum(empty * n_in**j for j in range(q))
        for i in range(q):
            o, n = list(outs), list(ins)
            o[i] += loop
            n[i] += loop
            if dq.accepts(i, o, n):
                yield i, base + (single - empty) * n_in**i

    def leaf(node: dp.Node, _q: int) -> np.ndarray:
        n_in, n_out = len(node.inside) ** q, len(node.outside) ** q
        table = np.zeros((n_in, n_out), dtype=np.bool_)
        for qo in range(n_out):
            for _, qi in placements(node, qo):
                table[qi, qo] = True
        return table

    return leaf, placements


def solve_lcvp(
    g: Digraph,
    bd: BranchDecomposition,
    dq: LcvpMatrix,
    skeleton: dp.Skeleton | None = None,
    witness: bool = False,
) -> LcvpResult:
    """Decide whether ``g`` has a partition obeying ``dq``."""
    d = max(1, dq.d)
    if skeleton is None:
        skeleton = dp.build_skeleton(g, bd, d)
    elif skeleton.d != d:
        raise ValueError(f"skeleton was built for cap {skeleton.d}, matrix needs {d}")
    bd.check_for(g)
    ring = dp.Semiring("or")
    leaf, placements = _leaf_checker(g, dq)
    tables = dp.run(skeleton, dq.q, leaf, ring)
    if not tables[skeleton.root][0, 0]:
        return LcvpResult(False)
    if not witness:
        return LcvpResult(True)

    def pick(t, qi, qo):
        for i, idx in placements(skeleton.nodes[t], qo):
            if idx == qi:
                return i
        raise RuntimeError("no valid placement at leaf")

    picks = dp.traceback(skeleton, dq.q, tables, ring, pick)
    parts = tuple(frozenset(v for v, i in picks.items() if i == p) for p in range(dq.q))
    return LcvpResult(True, parts)


def oriented_k_coloring(g: Digraph, bd: BranchDecomposition, k: int) -> LcvpResult:
    """Homomorphism into some tournament on ``k`` vertices; parts name the colours."""
    if not 1 <= k <= 5:
        raise ValueError("k must be between 1 and 5")
    skeleton = dp.build_skeleton(g, bd, 1)
    for h in tournaments(k):
        res = solve_lcvp(g, bd, homomorphism_matrix(h), skeleton=skeleton, witness=True)
        if res.exists:
            return res
    return LcvpResult(False)
