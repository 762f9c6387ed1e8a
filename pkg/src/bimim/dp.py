"""Shared dynamic-programming skeleton over a rooted branch decomposition.

The skeleton depends only on the digraph, the decomposition and the cap ``d``:
class indices for both sides of every node plus the three class-transition
maps used when two children are joined. Solvers then fold their own tables
over it, so several problems with the same cap can reuse one skeleton.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cuts import BranchDecomposition
from .digraph import Digraph
from .nbhd import ClassIndex, enumerate_classes

_CHUNK = 1 << 21


@dataclass
class Node:
    vmask: int
    children: tuple[int, ...] = ()
    vertex: int | None = None  # mapped graph vertex for leaves
    inside: ClassIndex | None = None
    outside: ClassIndex | None = None
    # transitions for internal nodes (children a, b)
    tt: np.ndarray | None = None  # (qa, qb) -> class of R_a | R_b over V_t
    ta: np.ndarray | None = None  # (qb, q_tbar) -> class of R_b | R_tbar over complement of V_a
    tb: np.ndarray | None = None  # (qa, q_tbar) -> class of R_a | R_tbar over complement of V_b


def _lookup(index: ClassIndex, rows: np.ndarray) -> np.ndarray:
    if rows.shape[-1] == 0:
        return np.zeros(rows.shape[:-1], dtype=np.int64)
    flat = np.ascontiguousarray(rows.reshape(-1, rows.shape[-1]), dtype=np.uint8)
    lk = index.lookup
    out = np.fromiter((lk[r.tobytes()] for r in flat), dtype=np.int64, count=flat.shape[0])
    return out.reshape(rows.shape[:-1])


def _joined(index: ClassIndex, left: np.ndarray, right: np.ndarray, d: int) -> np.ndarray:
    rows = np.minimum(left[:, None, :].astype(np.int16) + right[None, :, :], d)
    return _lookup(index, rows)


@dataclass
class Skeleton:
    g: Digraph
    bd: BranchDecomposition
    d: int
    root: int
    nodes: dict[int, Node] = field(default_factory=dict)
    postorder: list[int] = field(default_factory=list)

    def class_counts(self) -> list[tuple[int, int, int]]:
        """``(vertex mask, inside classes, outside classes)`` for every node."""
        return [(self.nodes[t].vmask, len(self.nodes[t].inside), len(self.nodes[t].outside)) for t in self.postorder]


def build_skeleton(g: Digraph, bd: BranchDecomposition, d: int) -> Skeleton:
    """Root ``bd`` on its lexicographically least tree edge and enumerate all classes."""
    bd.check_for(g)
    if d < 1:
        raise ValueError("skeleton cap must be >= 1")
    x, y = bd.tree_edges[0]
    root = bd.num_nodes
    adj = {k: list(v) for k, v in enumerate(bd.adj)}
    adj[x].remove(y)
    adj[y].remove(x)
    adj[x].append(root)
    adj[y].append(root)
    adj[root] = [x, y]
    skel = Skeleton(g, bd, d, root)
    parent = {root: None}
    order = [root]
    for t in order:
        for c in sorted(adj[t]):
            if c != parent[t]:
                parent[c] = t
                order.append(c)
    for t in reversed(order):
        kids = tuple(c for c in sorted(adj[t]) if c != parent[t])
        if kids:
            vmask = 0
            for c in kids:
                vmask |= skel.nodes[c].vmask
            skel.nodes[t] = Node(vmask, kids)
        else:
            v = bd.vertex_at.get(t)
            skel.nodes[t] = Node(0 if v is None else 1 << v, (), v)
        skel.postorder.append(t)
    full = g.full_mask
    for t in skel.postorder:
        node = skel.nodes[t]
        node.inside = enumerate_classes(g, node.vmask, d)
        node.outside = enumerate_classes(g, full & ~node.vmask, d)
    for t in skel.postorder:
        node = skel.nodes[t]
        if not node.children:
            continue
        a, b = (skel.nodes[c] for c in node.children)
        node.tt = _joined(node.inside, a.inside.projection(node.inside), b.inside.projection(node.inside), d)
        node.ta = _joined(a.outside, b.inside.projection(a.outside), node.outside.projection(a.outside), d)
        node.tb = _joined(b.outside, a.inside.projection(b.outside), node.outside.projection(b.outside), d)
    return skel


def _digits(count: int, base: int, q: int) -> np.ndarray:
    k = np.arange(count, dtype=np.int64)
    out = np.empty((count, q), dtype=np.int64)
    for i in range(q):
        out[:, i] = k % base
        k //= base
    return out


def tuple_transitions(skel: Skeleton, t: int, q: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """q-tuple versions of the transition maps at internal node ``t`` (identity for q = 1)."""
    node = skel.nodes[t]
    if q == 1:
        return node.tt, node.ta, node.tb
    a, b = (skel.nodes[c] for c in node.children)
    na, nb, nt = len(a.inside), len(b.inside), len(node.outside)
    da, db, dt = _digits(na**q, na, q), _digits(nb**q, nb, q), _digits(nt**q, nt, q)
    n_in, n_abar, n_bbar = len(node.inside), len(a.outside), len(b.outside)
    tt = sum(node.tt[da[:, i][:, None], db[:, i][None, :]] * n_in**i for i in range(q))
    ta = sum(node.ta[db[:, i][:, None], dt[:, i][None, :]] * n_abar**i for i in range(q))
    tb = sum(node.tb[da[:, i][:, None], dt[:, i][None, :]] * n_bbar**i for i in range(q))
    return tt, ta, tb


class Semiring:
    """Fold used at internal nodes: ``identity``, join of two child entries, and accumulation."""

    def __init__(self, kind: str):
        if kind not in ("min", "or"):
            raise ValueError(kind)
        self.kind = kind
        self.dtype = np.float64 if kind == "min" else np.bool_
        self.identity = np.inf if kind == "min" else False

    def join(self, x, y):
        return x + y if self.kind == "min" else x & y

    def accumulate(self, table, rows, values):
        if self.kind == "min":
            np.minimum.at(table, rows, values)
        else:
            np.logical_or.at(table, rows, values)


def fold_internal(skel: Skeleton, t: int, q: int, tables: dict[int, np.ndarray], ring: Semiring) -> np.ndarray:
    node = skel.nodes[t]
    a_id, b_id = node.children
    tab_a, tab_b = tables[a_id], tables[b_id]
    tt, ta, tb = tuple_transitions(skel, t, q)
    n_in, n_out = len(node.inside) ** q, len(node.outside) ** q
    table = np.full((n_in, n_out), ring.identity, dtype=ring.dtype)
    na, nb = tt.shape
    qb = np.arange(nb)[:, None]
    step = max(1, _CHUNK // max(1, nb * n_out))
    for lo in range(0, na, step):
        qa = np.arange(lo, min(na, lo + step))
        part_a = tab_a[qa[:, None, None], ta[None, :, :]]
        part_b = tab_b[qb[None, :, :], tb[qa][:, None, :]]
        vals = ring.join(part_a, part_b)
        ring.accumulate(table, tt[qa].ravel(), vals.reshape(-1, n_out))
    return table


def run(skel: Skeleton, q: int, leaf_table, ring: Semiring) -> dict[int, np.ndarray]:
    """Fill tables bottom-up; ``leaf_table(node, q)`` supplies leaf tables."""
    tables: dict[int, np.ndarray] = {}
    for t in skel.postorder:
        node = skel.nodes[t]
        if node.children:
            tables[t] = fold_internal(skel, t, q, tables, ring)
        elif node.vertex is None:
            # unmapped leaf of the one-vertex decomposition: only the empty tuple
            fill = 0 if ring.kind == "min" else True
            tables[t] = np.full((1, len(node.outside) ** q), fill, dtype=ring.dtype)
        else:
            tables[t] = leaf_table(node, q)
    return tables


def traceback(skel: Skeleton, q: int, tables: dict[int, np.ndarray], ring: Semiring, leaf_pick):
    """Walk winning entries from the root; ``leaf_pick(t, qi, qo)`` names the choice at leaf ``t``.

    Returns ``{vertex: choice}`` for every mapped leaf.
    """
    picks: dict[int, object] = {}
    stack = [(skel.root, 0, 0)]
    while stack:
        t, qi, qo = stack.pop()
        node = skel.nodes[t]
        if not node.children:
            if node.vertex is not None:
                picks[node.vertex] = leaf_pick(t, qi, qo)
            continue
        a_id, b_id = node.children
        tt, ta, tb = tuple_transitions(skel, t, q)
        target = tables[t][qi, qo]
        found = None
        for qa, qb in zip(*np.nonzero(tt == qi)):
            val = ring.join(tables[a_id][qa, ta[qb, qo]], tables[b_id][qb, tb[qa, qo]])
            if val == target:
                found = (int(qa), int(qb))
                break
        if found is None:
            raise RuntimeError(f"traceback failed at tree node {t}")
        qa, qb = found
        stack.append((a_id, qa, int(ta[qb, qo])))
        stack.append((b_id, qb, int(tb[qa, qo])))
    return picks
