"""Cut functions (induced matchings, GF(2) ranks) and branch decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .digraph import Digraph, UndirectedGraph, bits, mask_of


@dataclass(frozen=True)
class CutValues:
    mim_plus: int
    mim_minus: int
    cutrk_plus: int | None = None
    cutrk_minus: int | None = None

    @property
    def bimim(self) -> int:
        return self.mim_plus + self.mim_minus

    @property
    def bicutrk(self) -> int | None:
        if self.cutrk_plus is None:
            return None
        return self.cutrk_plus + self.cutrk_minus


def directed_bipartite(g: Digraph, a: Iterable[int], b: Iterable[int]) -> Digraph:
    """G[A -> B] on the same vertex indices: only the arcs of g from A into B."""
    am, bm = mask_of(a), mask_of(b)
    if am & bm:
        raise ValueError("sides of a directed bipartite subgraph must be disjoint")
    return Digraph(g.n, ((u, v) for u, v in g.edges if am >> u & 1 and bm >> v & 1))


def _arc_list(g: Digraph, amask: int, bmask: int) -> list[tuple[int, int]]:
    arcs = []
    for u in bits(amask):
        for v in bits(g.out_mask[u] & bmask):
            arcs.append((u, v))
    return arcs


def _nu_arcs(g: Digraph, arcs: list[tuple[int, int]], bmask: int) -> int:
    """Maximum induced matching among ``arcs`` (all from A into B)."""
    m = len(arcs)
    if m <= 1:
        return m
    # conflict: shared endpoint, or an arc of G[A->B] joining the two matching arcs
    by_tail: dict[int, int] = {}
    by_head: dict[int, int] = {}
    for i, (u, v) in enumerate(arcs):
        by_tail[u] = by_tail.get(u, 0) | 1 << i
        by_head[v] = by_head.get(v, 0) | 1 << i
    conf = []
    for i, (u, v) in enumerate(arcs):
        c = by_tail[u] | by_head[v]
        for v2 in bits(g.out_mask[u] & bmask):
            c |= by_head[v2]
        for u2, im in by_tail.items():
            if g.out_mask[u2] >> v & 1:
                c |= im
        conf.append(c & ~(1 << i))
    # cheapest edges first: fewer conflicts means the include-branch prunes less
    order = sorted(range(m), key=lambda i: conf[i].bit_count())
    rank = {old: new for new, old in enumerate(order)}
    conf = [mask_of(rank[j] for j in bits(conf[i])) for i in order]
    tails = [arcs[i][0] for i in order]
    tail_groups: dict[int, int] = {}
    for i, u in enumerate(tails):
        tail_groups[u] = tail_groups.get(u, 0) | 1 << i
    groups = list(tail_groups.values())

    def bound(cand: int) -> int:
        return sum(1 for gm in groups if gm & cand)

    def exists(cand: int, k: int) -> bool:
        if k <= 0:
            return True
        if cand.bit_count() < k or bound(cand) < k:
            return False
        low = cand & -cand
        i = low.bit_length() - 1
        if exists(cand & ~conf[i] & ~low, k - 1):
            return True
        return exists(cand & ~low, k)

    full = (1 << m) - 1
    k = 1
    while exists(full, k + 1):
        k += 1
    return k


def max_induced_matching(g: Digraph, a: Iterable[int], b: Iterable[int]) -> int:
    """Exact nu of a bipartite digraph whose arcs all go from side ``a`` to side ``b``."""
    am, bm = mask_of(a), mask_of(b)
    for u, v in g.edges:
        if not (am >> u & 1 and bm >> v & 1):
            raise ValueError(f"arc ({u}, {v}) does not go from side a to side b")
    return _nu_arcs(g, _arc_list(g, am, bm), bm)


def nu_directed(g: Digraph, amask: int, bmask: int) -> int:
    """nu(G[A -> B]) for vertex bitmasks, without materialising the subgraph."""
    return _nu_arcs(g, _arc_list(g, amask, bmask), bmask)


def gf2_rank(rows: list[int]) -> int:
    """Rank over GF(2) of a matrix given as int row bitsets."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return len(basis)


def cut_matrix_rank(g: Digraph, amask: int, bmask: int) -> int:
    """GF(2) rank of M_G[A -> B]."""
    return gf2_rank([g.out_mask[u] & bmask for u in bits(amask)])


def cut_values(g: Digraph, cut: Iterable[int] | int, with_rank: bool = False) -> CutValues:
    amask = cut if isinstance(cut, int) else mask_of(cut)
    if amask & ~g.full_mask:
        raise ValueError("cut side contains a vertex outside the digraph")
    bmask = g.full_mask & ~amask
    plus = nu_directed(g, amask, bmask)
    minus = nu_directed(g, bmask, amask)
    if not with_rank:
        return CutValues(plus, minus)
    return CutValues(plus, minus, cut_matrix_rank(g, amask, bmask), cut_matrix_rank(g, bmask, amask))


def mim_undirected(h: UndirectedGraph, amask: int) -> int:
    """nu(H[A, B]) for an undirected graph, via the A -> B orientation of the cut edges."""
    bmask = ((1 << h.n) - 1) & ~amask
    arcs = []
    for u in bits(amask):
        for v in bits(h.adj_mask[u] & bmask):
            arcs.append((u, v))
    oriented = Digraph(h.n, arcs)
    return _nu_arcs(oriented, arcs, bmask)


class BranchDecomposition:
    """Subcubic tree plus a bijection from digraph vertices to its leaves.

    Tree nodes are ``0..num_nodes-1``. ``leaf_of[v]`` is the tree leaf holding
    vertex ``v``. A one-vertex digraph uses a single tree edge whose second
    endpoint is an unmapped leaf.
    """

    def __init__(self, num_nodes: int, tree_edges: Iterable[tuple[int, int]], leaf_of: Sequence[int]):
        self.num_nodes = int(num_nodes)
        self.tree_edges = tuple(sorted((min(x, y), max(x, y)) for x, y in tree_edges))
        self.leaf_of = tuple(int(x) for x in leaf_of)
        self._validate()
        self.vertex_at = {node: v for v, node in enumerate(self.leaf_of)}

    @property
    def n(self) -> int:
        return len(self.leaf_of)

    def _validate(self) -> None:
        N = self.num_nodes
        if N < 2:
            raise ValueError("tree must have at least 2 nodes")
        if len(self.tree_edges) != N - 1 or len(set(self.tree_edges)) != N - 1:
            raise ValueError("tree must have exactly num_nodes - 1 distinct edges")
        adj: list[list[int]] = [[] for _ in range(N)]
        for x, y in self.tree_edges:
            if not (0 <= x < N and 0 <= y < N) or x == y:
                raise ValueError(f"invalid tree edge ({x}, {y})")
            adj[x].append(y)
            adj[y].append(x)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != N:
            raise ValueError("tree is not connected")
        leaves = {x for x in range(N) if len(adj[x]) == 1}
        for x in range(N):
            if len(adj[x]) not in (1, 3):
                raise ValueError(f"tree is not subcubic: node {x} has degree {len(adj[x])}")
        if len(set(self.leaf_of)) != len(self.leaf_of):
            raise ValueError("leaf map is not injective")
        if not set(self.leaf_of) <= leaves:
            raise ValueError("leaf map sends a vertex to a non-leaf node")
        if len(self.leaf_of) == 1:
            if N != 2:
                raise ValueError("a one-vertex digraph uses the 2-node tree")
        elif set(self.leaf_of) != leaves:
            raise ValueError("leaf map is not a bijection onto the leaves")
        self.adj = tuple(tuple(sorted(a)) for a in adj)

    def check_for(self, g: Digraph) -> None:
        if g.n != self.n:
            raise ValueError(f"decomposition has {self.n} leaves but the digraph has {g.n} vertices")

    def edge_cuts(self) -> dict[tuple[int, int], int]:
        """For each tree edge ``(x, y)`` (x < y), the vertex mask on the side of ``y``."""
        parent = [-1] * self.num_nodes
        order = [0]
        parent[0] = 0
        for x in order:
            for y in self.adj[x]:
                if parent[y] == -1:
                    parent[y] = x
                    order.append(y)
        sub = [0] * self.num_nodes
        for x in reversed(order):
            if x in self.vertex_at:
                sub[x] |= 1 << self.vertex_at[x]
            if x != 0:
                sub[parent[x]] |= sub[x]
        full = sub[0]
        cuts = {}
        for x, y in self.tree_edges:
            if parent[y] == x:
                cuts[(x, y)] = sub[y]
            else:
                cuts[(x, y)] = full & ~sub[x]
        return cuts

    def is_linear(self) -> bool:
        """Caterpillar test: removing all leaves leaves a path (or nothing)."""
        inner = [x for x in range(self.num_nodes) if len(self.adj[x]) > 1]
        inner_set = set(inner)
        for x in inner:
            if sum(1 for y in self.adj[x] if y in inner_set) > 2:
                return False
        return True

    def leaf_order(self) -> list[int]:
        """Vertices in caterpillar order (only meaningful when ``is_linear``).

        Leaves hanging off the same spine node are listed by tree-node id.
        """
        if self.num_nodes == 2:
            return [self.vertex_at[x] for x in (0, 1) if x in self.vertex_at]
        inner = {x for x in range(self.num_nodes) if len(self.adj[x]) > 1}
        ends = [x for x in inner if sum(1 for y in self.adj[x] if y in inner) <= 1]
        start = min(ends, key=lambda x: min(y for y in self.adj[x] if y not in inner))
        order, prev, cur = [], None, start
        while cur is not None:
            order.extend(self.vertex_at[y] for y in sorted(self.adj[cur]) if y not in inner)
            nxt = [y for y in self.adj[cur] if y in inner and y != prev]
            prev, cur = cur, (nxt[0] if nxt else None)
        return order

    def __eq__(self, other):
        if not isinstance(other, BranchDecomposition):
            return NotImplemented
        return (self.num_nodes, self.tree_edges, self.leaf_of) == (other.num_nodes, other.tree_edges, other.leaf_of)

    def __repr__(self):
        return f"BranchDecomposition(num_nodes={self.num_nodes}, tree_edges={list(self.tree_edges)}, leaf_of={list(self.leaf_of)})"


def linear_decomposition(order: Sequence[int]) -> BranchDecomposition:
    """Caterpillar with leaves in the given order; leaf ``i`` holds ``order[i]``."""
    n = len(order)
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of 0..n-1")
    if n == 0:
        raise ValueError("cannot decompose the empty digraph")
    leaf_of = [0] * n
    for i, v in enumerate(order):
        leaf_of[v] = i
    if n == 1:
        return BranchDecomposition(2, [(0, 1)], leaf_of)
    if n == 2:
        return BranchDecomposition(2, [(0, 1)], leaf_of)
    spine = list(range(n, 2 * n - 2))
    edges = [(spine[0], 0), (spine[0], 1)]
    for k in range(1, len(spine)):
        edges.append((spine[k - 1], spine[k]))
        edges.append((spine[k], k + 1))
    edges.append((spine[-1], n - 1))
    return BranchDecomposition(2 * n - 2, edges, leaf_of)


def decomposition_width(g: Digraph, bd: BranchDecomposition, measure: str = "bimim") -> int:
    """Maximum over tree edges of bimim (or bicutrk) of the induced cut."""
    bd.check_for(g)
    if measure not in ("bimim", "birank"):
        raise ValueError("measure must be 'bimim' or 'birank'")
    full = g.full_mask
    best = 0
    seen: set[int] = set()
    for amask in bd.edge_cuts().values():
        key = min(amask, full & ~amask)
        if key in seen:
            continue
        seen.add(key)
        if measure == "bimim":
            cv = cut_values(g, amask)
            best = max(best, cv.bimim)
        else:
            b = full & ~amask
            best = max(best, cut_matrix_rank(g, amask, b) + cut_matrix_rank(g, b, amask))
    return best


def cut_widths(g: Digraph, bd: BranchDecomposition) -> dict[tuple[int, int], CutValues]:
    """Cut values (with ranks) for every tree edge."""
    bd.check_for(g)
    return {e: cut_values(g, a, with_rank=True) for e, a in bd.edge_cuts().items()}


def random_branch_decomposition(n: int, rng) -> BranchDecomposition:
    """Uniform-ish subcubic tree: leaves are inserted one by one on random edges."""
    if n <= 2:
        order = list(range(n))
        rng.shuffle(order)
        return linear_decomposition(order)
    edges = [(0, n), (1, n), (2, n)]
    nxt = n + 1
    for k in range(3, n):
        x, y = edges.pop(rng.randrange(len(edges)))
        edges += [(x, nxt), (nxt, y), (nxt, k)]
        nxt += 1
    perm = list(range(n))
    rng.shuffle(perm)
    return BranchDecomposition(nxt, edges, perm)
