"""Branch decompositions with guaranteed bi-mim-width from representations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .cuts import BranchDecomposition, decomposition_width, linear_decomposition
from .digraph import Digraph, UndirectedGraph
from .representations import (
    HConvexRep,
    HDigraphRep,
    HSubdivision,
    IntervalRep,
    PermutationRep,
    RootedDirPathRep,
    is_adjusted,
    is_nice,
    normalize_hdigraph,
    realize,
)


@dataclass(frozen=True)
class BuilderReport:
    decomposition: BranchDecomposition
    guarantee: int
    measured: int | None = None


def _report(rep, bd: BranchDecomposition, guarantee: int, verify: bool) -> BuilderReport:
    measured = decomposition_width(realize(rep), bd) if verify else None
    return BuilderReport(bd, guarantee, measured)


def build_reflexive_interval(rep: IntervalRep, verify: bool = False) -> BuilderReport:
    """Order vertices by the leftmost point of S_v ∩ T_v."""
    anchors = []
    for v, (s, t) in enumerate(zip(rep.s, rep.t)):
        lo, hi = max(s[0], t[0]), min(s[1], t[1])
        if lo > hi:
            raise ValueError(f"vertex {v} has no loop (S and T are disjoint)")
        anchors.append(lo)
    order = sorted(range(rep.n), key=lambda v: (anchors[v], v))
    return _report(rep, linear_decomposition(order), 2, verify)


def build_adjusted_permutation(rep: PermutationRep, verify: bool = False) -> BuilderReport:
    if not is_adjusted(rep):
        raise ValueError("representation is not adjusted")
    order = sorted(range(rep.n), key=lambda v: (rep.s[v][0], v))
    return _report(rep, linear_decomposition(order), 4, verify)


class _Tree:
    """Mutable rooted tree used while rewriting a rooted path representation."""

    def __init__(self, rep: RootedDirPathRep):
        self.parent = list(rep.parent)
        self.children = [[] for _ in self.parent]
        for x, p in enumerate(self.parent):
            if p is not None:
                self.children[p].append(x)
        self.s = [list(p) for p in rep.s]
        self.t = [list(p) for p in rep.t]

    def new_node(self, parent: int) -> int:
        x = len(self.parent)
        self.parent.append(parent)
        self.children.append([])
        self.children[parent].append(x)
        return x

    def split(self, t: int, q: int) -> int:
        """Replace the arc t->q by t->t'->q and return t'."""
        self.children[t].remove(q)
        tp = self.new_node(t)
        self.parent[q] = tp
        self.children[tp].append(q)
        return tp

    def snapshot(self) -> RootedDirPathRep:
        return RootedDirPathRep(self.parent, [tuple(p) for p in self.s], [tuple(p) for p in self.t])


def normalize_rdpath(rep: RootedDirPathRep, trace: Callable[[RootedDirPathRep], None] | None = None) -> tuple[RootedDirPathRep, list[int]]:
    """Rewrite until out-degrees are at most 2, anchors are distinct and each anchor has out-degree at most 1.

    ``trace`` sees the representation after every rewrite.
    """
    if not is_adjusted(rep):
        raise ValueError("representation is not adjusted")
    tr = _Tree(rep)
    # bottoms are shared, so the common endpoint of S_v and T_v is the anchor
    budget = 4 * (rep.num_nodes + rep.n) + 8
    steps = 0

    def done():
        nonlocal steps
        steps += 1
        if steps > budget:
            raise RuntimeError("rewriting did not terminate")
        if trace is not None:
            trace(tr.snapshot())

    # wide nodes become chains: t -> p1 -> p2 ..., p_i -> t_i
    for t in range(len(tr.parent)):
        kids = sorted(tr.children[t])
        if len(kids) < 3:
            continue
        for k in kids:
            tr.children[t].remove(k)
        prev = t
        for k in kids:
            p = tr.new_node(prev)
            tr.parent[k] = p
            tr.children[p].append(k)
            prev = p
        done()
    # shared anchors: keep the smallest vertex, move the others down one fresh node each
    while True:
        by_anchor: dict[int, list[int]] = {}
        for v in range(rep.n):
            by_anchor.setdefault(tr.s[v][1], []).append(v)
        clash = sorted((a, vs) for a, vs in by_anchor.items() if len(vs) > 1)
        if not clash:
            break
        a, vs = clash[0]
        v = vs[-1]
        kids = sorted(tr.children[a])
        tp = tr.split(a, kids[0]) if kids else tr.new_node(a)
        if not kids:
            tr.new_node(tp)
        tr.s[v][1] = tr.t[v][1] = tp
        done()
    # anchors must not branch
    for v in range(rep.n):
        a = tr.s[v][1]
        kids = sorted(tr.children[a])
        if len(kids) >= 2:
            tp = tr.split(a, kids[0])
            tr.s[v][1] = tr.t[v][1] = tp
            done()
    out = tr.snapshot()
    return out, [p[1] for p in out.s]


def build_adjusted_rdpath(rep: RootedDirPathRep, verify: bool = False, trace=None) -> BuilderReport:
    n = rep.n
    if not is_adjusted(rep):
        raise ValueError("representation is not adjusted")
    if n <= 2:
        return _report(rep, linear_decomposition(list(range(n))), 2, verify)
    norm, anchors = normalize_rdpath(rep, trace)
    m = norm.num_nodes
    adj: dict[int, set[int]] = {x: set() for x in range(m + n)}
    for x, p in enumerate(norm.parent):
        if p is not None:
            adj[x].add(p)
            adj[p].add(x)
    for v, a in enumerate(anchors):
        adj[m + v].add(a)
        adj[a].add(m + v)
    # prune leaves that carry no vertex
    stack = [x for x in range(m) if len(adj[x]) <= 1]
    while stack:
        x = stack.pop()
        if x not in adj or len(adj[x]) > 1:
            continue
        for y in adj.pop(x):
            adj[y].discard(x)
            if y < m and len(adj[y]) <= 1:
                stack.append(y)
    # smooth degree-2 nodes
    for x in sorted(adj):
        if x < m and len(adj[x]) == 2:
            y, z = adj.pop(x)
            adj[y].discard(x)
            adj[z].discard(x)
            adj[y].add(z)
            adj[z].add(y)
    ids = {x: k for k, x in enumerate(sorted(adj))}
    edges = sorted({(min(ids[x], ids[y]), max(ids[x], ids[y])) for x in adj for y in adj[x]})
    bd = BranchDecomposition(len(ids), edges, [ids[m + v] for v in range(n)])
    return _report(rep, bd, 2, verify)


def _components_of_host(h: UndirectedGraph) -> list[list[int]]:
    return h.components()


def _host_guarantee(h: UndirectedGraph) -> int:
    m = len(h.sorted_edges())
    return 12 * m if m else 2


def _component_rank(sub: HSubdivision) -> dict[int, int]:
    """Position of every F-node in the concatenated per-component BFS orders."""
    comp_of = {}
    for c in _components_of_host(sub.host):
        for x in c:
            comp_of[x] = min(c)
    roots = sorted(set(comp_of.values()))
    rank, pos = {}, 0
    for r in roots:
        for x in sub.bfs_order(r):
            rank[x] = pos
            pos += 1
    return rank


def build_reflexive_hdigraph(rep: HDigraphRep, verify: bool = False) -> BuilderReport:
    norm, anchors = normalize_hdigraph(rep)
    rank = _component_rank(norm.sub)
    order = sorted(range(rep.n), key=lambda v: (rank[anchors[v]], v))
    return _report(rep, linear_decomposition(order), _host_guarantee(rep.sub.host), verify)


def build_nice_hconvex(rep: HConvexRep, verify: bool = False) -> BuilderReport:
    """BFS order of side A with every b placed right after its anchor.

    Anchors are made distinct on a larger subdivision whose extra A-vertices
    are dropped from the final order; the realized digraph is an induced
    subdigraph of the extended one.
    """
    if not is_nice(rep):
        raise ValueError("representation is not nice: some b has no two-way arc")
    na = rep.a_size
    ext, anchors = normalize_hdigraph(HDigraphRep(rep.sub, rep.out_sets, rep.in_sets)) if rep.b_size else (None, [])
    sub = ext.sub if ext is not None else rep.sub
    rank = _component_rank(sub)
    after: dict[int, list[int]] = {}
    for b, a in enumerate(anchors):
        after.setdefault(a, []).append(na + b)
    order = []
    for x in sorted(rank, key=rank.get):
        if x < na:
            order.append(x)
        order.extend(after.get(x, []))
    return _report(rep, linear_decomposition(order), _host_guarantee(rep.sub.host), verify)


BUILDERS = {
    "reflexive-interval": build_reflexive_interval,
    "adjusted-permutation": build_adjusted_permutation,
    "adjusted-rdpath": build_adjusted_rdpath,
    "reflexive-hdigraph": build_reflexive_hdigraph,
    "nice-hconvex": build_nice_hconvex,
}


def realized(rep) -> Digraph:
    return realize(rep)
