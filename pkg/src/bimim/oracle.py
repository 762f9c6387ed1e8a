"""Naive exhaustive references. Deliberately independent of the solver code."""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, product

import networkx as nx

from .digraph import Digraph


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 8
    max_leaves: int = 6
    timeout: float | None = None

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_leaves < 1 or (self.timeout is not None and self.timeout <= 0):
            raise ValueError("budget bounds must be positive")


DEFAULT_BUDGET = OracleBudget()


class _Clock:
    def __init__(self, budget: OracleBudget):
        self.deadline = None if budget.timeout is None else time.monotonic() + budget.timeout

    def tick(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("oracle timed out")


def _arc_lists(g: Digraph) -> tuple[list[list[int]], list[list[int]]]:
    """Successor and predecessor lists read straight off the arc set; a loop lands in both."""
    succ = [[] for _ in range(g.n)]
    pred = [[] for _ in range(g.n)]
    for a, b in g.edges:
        succ[a].append(b)
        pred[b].append(a)
    return succ, pred


def _count(nbrs: list[int], members) -> int:
    return sum(1 for x in nbrs if x in members)


def brute_power(g: Digraph, r: int) -> Digraph:
    """Arc (x, y) iff some walk of length 1..r leads from x to y."""
    step = {v: {b for a, b in g.edges if a == v} for v in range(g.n)}
    edges = set()
    for x in range(g.n):
        layer = {x}
        for _ in range(r):
            layer = set().union(*(step[y] for y in layer)) if layer else set()
            edges |= {(x, y) for y in layer}
    return Digraph(g.n, edges)


def brute_sigma_rho(g: Digraph, prob, budget: OracleBudget = DEFAULT_BUDGET):
    """``(value, witness)``; value is None when no set qualifies and 1 for a satisfied ``exists``."""
    if g.n > budget.max_vertices:
        raise BudgetExceeded(f"{g.n} vertices exceeds the oracle limit {budget.max_vertices}")
    clock = _Clock(budget)
    succ, pred = _arc_lists(g)
    best, best_set = None, None
    for size in range(g.n + 1):
        for combo in combinations(range(g.n), size):
            clock.tick()
            s = set(combo)
            ok = True
            for v in range(g.n):
                o, i = _count(succ[v], s), _count(pred[v], s)
                if v in s:
                    ok = o in prob.sigma_out and i in prob.sigma_in
                else:
                    ok = o in prob.rho_out and i in prob.rho_in
                if not ok:
                    break
            if not ok:
                continue
            if prob.objective == "exists":
                return 1, frozenset(s)
            if prob.objective == "min":
                return size, frozenset(s)
            best, best_set = size, frozenset(s)
    return best, best_set


def brute_lcvp(g: Digraph, dq, budget: OracleBudget = DEFAULT_BUDGET):
    """First valid assignment as a tuple of parts, or None."""
    q = len(dq.entries)
    if g.n > budget.max_vertices:
        raise BudgetExceeded(f"{g.n} vertices exceeds the oracle limit {budget.max_vertices}")
    clock = _Clock(budget)
    succ, pred = _arc_lists(g)
    for colour in product(range(q), repeat=g.n):
        clock.tick()
        parts = [{v for v in range(g.n) if colour[v] == j} for j in range(q)]
        ok = True
        for v in range(g.n):
            row = dq.entries[colour[v]]
            for j in range(q):
                o, i = _count(succ[v], parts[j]), _count(pred[v], parts[j])
                if o not in row[j][0] or i not in row[j][1]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return tuple(frozenset(p) for p in parts)
    return None


def _induced_matching_size(arcs: list[tuple[int, int]], adjacent) -> int:
    """Largest set of arcs with distinct ends and no arc between ends of two of them."""
    best = 0
    for k in range(1, len(arcs) + 1):
        found = False
        for combo in combinations(arcs, k):
            heads = [a for a, _ in combo]
            tails = [b for _, b in combo]
            if len(set(heads)) < k or len(set(tails)) < k:
                continue
            if all(not adjacent(x[0], y[1]) for x in combo for y in combo if x != y):
                found = True
                break
        if not found:
            return best
        best = k
    return best


def brute_nu(g: Digraph, a: set[int], b: set[int]) -> int:
    arcs = sorted((x, y) for x, y in g.edges if x in a and y in b)
    return _induced_matching_size(arcs, lambda x, y: (x, y) in g.edges)


def brute_bimim(g: Digraph, a: set[int]) -> int:
    b = set(range(g.n)) - set(a)
    return brute_nu(g, set(a), b) + brute_nu(g, b, set(a))


def undirected_nu(h, a: set[int]) -> int:
    """Induced matching number of the bipartite graph between ``a`` and the rest of ``h``.

    Taken as a maximum clique in the complement of the conflict graph of the cut edges.
    ``h`` is any object with ``n`` and ``sorted_edges()``.
    """
    adj = {frozenset(e) for e in h.sorted_edges()}
    cross = [(u, v) if u in a else (v, u) for u, v in h.sorted_edges() if (u in a) != (v in a)]
    if not cross:
        return 0
    comp = nx.Graph()
    comp.add_nodes_from(range(len(cross)))
    for i, j in combinations(range(len(cross)), 2):
        (x1, y1), (x2, y2) = cross[i], cross[j]
        clash = x1 == x2 or y1 == y2 or frozenset((x1, y2)) in adj or frozenset((x2, y1)) in adj
        if not clash:
            comp.add_edge(i, j)
    _, weight = nx.max_weight_clique(comp, weight=None)
    return weight


def leaf_labelled_trees(n: int):
    """Every subcubic tree whose leaves are labelled 0..n-1, as ``(edges, leaf_node)``.

    Leaf ``v`` sits on node ``v``; internal nodes are numbered from ``n``.
    """
    if n == 1:
        yield [(0, 1)], [0]
        return
    if n == 2:
        yield [(0, 1)], [0, 1]
        return

    def grow(edges, nxt, k):
        if k == n:
            yield edges
            return
        for idx, (x, y) in enumerate(edges):
            w = nxt
            rest = edges[:idx] + edges[idx + 1 :]
            yield from grow(rest + [(x, w), (w, y), (w, k)], nxt + 1, k + 1)

    for edges in grow([(0, n), (1, n), (2, n)], n + 1, 3):
        yield edges, list(range(n))


def _leaf_sides(edges, n):
    adj: dict[int, list[int]] = {}
    for x, y in edges:
        adj.setdefault(x, []).append(y)
        adj.setdefault(y, []).append(x)
    for x, y in edges:
        seen, stack = {y, x}, [y]
        side = set()
        while stack:
            z = stack.pop()
            if z < n:
                side.add(z)
            for w in adj[z]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        yield side


def exact_bimimwidth(g: Digraph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Minimum over all branch decompositions of the largest cut value."""
    if g.n > budget.max_leaves:
        raise BudgetExceeded(f"{g.n} leaves exceeds the oracle limit {budget.max_leaves}")
    if g.n <= 1:
        return 0
    clock = _Clock(budget)
    memo: dict[frozenset[int], int] = {}

    def value(side):
        key = frozenset(side)
        if key not in memo:
            memo[key] = brute_bimim(g, set(side))
        return memo[key]

    best = None
    for edges, _ in leaf_labelled_trees(g.n):
        clock.tick()
        w = 0
        for side in _leaf_sides(edges, g.n):
            w = max(w, value(side))
            if best is not None and w >= best:
                break
        if best is None or w < best:
            best = w
    return best


def brute_nec(g: Digraph, a, d: int, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Number of distinct capped in/out count vectors over subsets of ``a``."""
    a = sorted(a)
    if len(a) > budget.max_vertices + 4:
        raise BudgetExceeded(f"side of size {len(a)} exceeds the oracle limit")
    rest = [u for u in range(g.n) if u not in set(a)]
    preds = {u: {x for x, y in g.edges if y == u} for u in rest}
    succs = {u: {y for x, y in g.edges if x == u} for u in rest}
    seen = set()
    for k in range(len(a) + 1):
        for combo in combinations(a, k):
            x = set(combo)
            seen.add(tuple((min(d, len(preds[u] & x)), min(d, len(succs[u] & x))) for u in rest))
    return len(seen)


def exact_mimwidth(h, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Minimum over all branch decompositions of the largest undirected cut matching."""
    if h.n > budget.max_leaves:
        raise BudgetExceeded(f"{h.n} leaves exceeds the oracle limit {budget.max_leaves}")
    if h.n <= 1:
        return 0
    memo: dict[frozenset[int], int] = {}
    best = None
    for edges, _ in leaf_labelled_trees(h.n):
        w = 0
        for side in _leaf_sides(edges, h.n):
            key = frozenset(side)
            if key not in memo:
                memo[key] = undirected_nu(h, set(side))
            w = max(w, memo[key])
        best = w if best is None else min(best, w)
    return best
