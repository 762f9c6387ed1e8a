"""Intersection-digraph representations, their realizations and generators.

Vertex ``v`` sends an arc to ``w`` exactly when the source set of ``v`` meets
the target set of ``w``. All coordinates are integers and intervals are closed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .digraph import Digraph, UndirectedGraph, grid_graph, underlying

Interval = tuple[int, int]


def _check_interval(iv, what):
    lo, hi = iv
    if lo > hi:
        raise ValueError(f"{what}: left end {lo} exceeds right end {hi}")


def _meet(x: Interval, y: Interval) -> bool:
    return x[0] <= y[1] and y[0] <= x[1]


@dataclass(frozen=True)
class IntervalRep:
    s: tuple[Interval, ...]
    t: tuple[Interval, ...]

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(tuple(x) for x in self.s))
        object.__setattr__(self, "t", tuple(tuple(x) for x in self.t))
        if len(self.s) != len(self.t):
            raise ValueError("source and target lists differ in length")
        for v, (a, b) in enumerate(zip(self.s, self.t)):
            _check_interval(a, f"S of vertex {v}")
            _check_interval(b, f"T of vertex {v}")

    @property
    def n(self) -> int:
        return len(self.s)


@dataclass(frozen=True)
class PermutationRep:
    """Segments between two parallel lines; ``s[v] = (sA, sB)`` and ``t[v] = (tA, tB)``."""

    s: tuple[tuple[int, int], ...]
    t: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(tuple(x) for x in self.s))
        object.__setattr__(self, "t", tuple(tuple(x) for x in self.t))
        if len(self.s) != len(self.t):
            raise ValueError("source and target lists differ in length")

    @property
    def n(self) -> int:
        return len(self.s)


def _cross(x, y) -> bool:
    return (x[0] - y[0]) * (x[1] - y[1]) <= 0


@dataclass(frozen=True)
class RootedDirPathRep:
    """Directed paths in a rooted tree, each stored as ``(top, bottom)``."""

    parent: tuple[int | None, ...]
    s: tuple[tuple[int, int], ...]
    t: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "parent", tuple(self.parent))
        object.__setattr__(self, "s", tuple(tuple(x) for x in self.s))
        object.__setattr__(self, "t", tuple(tuple(x) for x in self.t))
        m = len(self.parent)
        roots = [x for x, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            raise ValueError(f"tree needs exactly one root, found {len(roots)}")
        for x in range(m):
            seen, y = set(), x
            while y is not None:
                if y in seen or not 0 <= y < m:
                    raise ValueError(f"node {x} does not reach the root")
                seen.add(y)
                y = self.parent[y]
        if len(self.s) != len(self.t):
            raise ValueError("source and target lists differ in length")
        for v, paths in enumerate(zip(self.s, self.t)):
            for name, (top, bot) in zip("ST", paths):
                if not (0 <= top < m and 0 <= bot < m) or top not in self.ancestors(bot):
                    raise ValueError(f"{name} of vertex {v}: {top} is not an ancestor of {bot}")

    @property
    def root(self) -> int:
        return self.parent.index(None)

    @property
    def n(self) -> int:
        return len(self.s)

    @property
    def num_nodes(self) -> int:
        return len(self.parent)

    def ancestors(self, x: int) -> list[int]:
        """``x`` and its ancestors, bottom up."""
        out = []
        while x is not None:
            out.append(x)
            x = self.parent[x]
        return out

    def path_nodes(self, top: int, bot: int) -> frozenset[int]:
        out, x = [], bot
        while True:
            out.append(x)
            if x == top:
                return frozenset(out)
            x = self.parent[x]


class HSubdivision:
    """A subdivision F of ``host``: host vertices keep their ids, new nodes get ids from ``host.n`` up.

    ``paths[k]`` lists the F-nodes along host edge ``k`` (in ``host.sorted_edges()`` order), ends included.
    """

    __slots__ = ("host", "paths", "num_nodes", "f", "_edge_at")

    def __init__(self, host: UndirectedGraph, paths: Sequence[Sequence[int]]):
        self.host = host
        self.paths = tuple(tuple(p) for p in paths)
        edges = host.sorted_edges()
        if len(self.paths) != len(edges):
            raise ValueError("need one path per host edge")
        inner = []
        for (u, v), p in zip(edges, self.paths):
            if len(p) < 2 or p[0] != u or p[-1] != v:
                raise ValueError(f"path for host edge {u}-{v} must run from {u} to {v}")
            inner.extend(p[1:-1])
        self.num_nodes = host.n + len(inner)
        if sorted(inner) != list(range(host.n, self.num_nodes)):
            raise ValueError("subdivision nodes must be distinct and numbered from the host size up")
        self._edge_at = {}
        fe = []
        for k, p in enumerate(self.paths):
            for x, y in zip(p, p[1:]):
                self._edge_at[(min(x, y), max(x, y))] = k
                fe.append((x, y))
        self.f = UndirectedGraph(self.num_nodes, fe)

    @classmethod
    def from_counts(cls, host: UndirectedGraph, counts: Sequence[int]) -> HSubdivision:
        """Canonical numbering: inner nodes of edge 0 first, each path listed from its smaller end."""
        nxt, paths = host.n, []
        for (u, v), c in zip(host.sorted_edges(), counts):
            if c < 0:
                raise ValueError("negative subdivision count")
            paths.append([u, *range(nxt, nxt + c), v])
            nxt += c
        if len(paths) != len(host.sorted_edges()):
            raise ValueError("need one count per host edge")
        return cls(host, paths)

    @property
    def counts(self) -> list[int]:
        return [len(p) - 2 for p in self.paths]

    def is_branching(self, x: int) -> bool:
        return x < self.host.n

    def edge_index(self, x: int, y: int) -> int:
        key = (min(x, y), max(x, y))
        if key not in self._edge_at:
            raise ValueError(f"nodes {x} and {y} are not adjacent in F")
        return self._edge_at[key]

    def subdivide(self, x: int, y: int) -> tuple[HSubdivision, int]:
        """Insert a fresh node between adjacent F-nodes ``x`` and ``y``."""
        k = self.edge_index(x, y)
        p = list(self.paths[k])
        i = next(i for i in range(len(p) - 1) if {p[i], p[i + 1]} == {x, y})
        z = self.num_nodes
        p.insert(i + 1, z)
        paths = list(self.paths)
        paths[k] = p
        return HSubdivision(self.host, paths), z

    def canonical(self) -> tuple[HSubdivision, dict[int, int]]:
        """Renumber to the ``from_counts`` layout; returns the new subdivision and old-to-new node map."""
        mapping = {x: x for x in range(self.host.n)}
        nxt = self.host.n
        for p in self.paths:
            for x in p[1:-1]:
                mapping[x] = nxt
                nxt += 1
        return HSubdivision.from_counts(self.host, self.counts), mapping

    def is_connected_set(self, nodes) -> bool:
        nodes = set(nodes)
        if not nodes:
            return False
        start = min(nodes)
        seen, stack = {start}, [start]
        while stack:
            x = stack.pop()
            for y in self.f.neighbors(x):
                if y in nodes and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen == nodes

    def bfs_order(self, root: int) -> list[int]:
        order, seen = [root], {root}
        for x in order:
            for y in self.f.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    order.append(y)
        return order

    def __eq__(self, other):
        return isinstance(other, HSubdivision) and self.host == other.host and self.paths == other.paths

    def __hash__(self):
        return hash((self.host, self.paths))


def _frozen_sets(xs):
    return tuple(frozenset(x) for x in xs)


@dataclass(frozen=True)
class HDigraphRep:
    sub: HSubdivision
    s: tuple[frozenset[int], ...]
    t: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "s", _frozen_sets(self.s))
        object.__setattr__(self, "t", _frozen_sets(self.t))
        if len(self.s) != len(self.t):
            raise ValueError("source and target lists differ in length")
        for v, pair in enumerate(zip(self.s, self.t)):
            for name, x in zip("ST", pair):
                if any(not 0 <= a < self.sub.num_nodes for a in x):
                    raise ValueError(f"{name} of vertex {v} names a node outside F")
                if not self.sub.is_connected_set(x):
                    raise ValueError(f"{name} of vertex {v} is empty or not connected in F")

    @property
    def n(self) -> int:
        return len(self.s)


@dataclass(frozen=True)
class HConvexRep:
    """Bipartite digraph: side A is the node set of F (vertices ``0..|F|-1``), side B follows."""

    sub: HSubdivision
    out_sets: tuple[frozenset[int], ...]
    in_sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "out_sets", _frozen_sets(self.out_sets))
        object.__setattr__(self, "in_sets", _frozen_sets(self.in_sets))
        if len(self.out_sets) != len(self.in_sets):
            raise ValueError("out and in lists differ in length")
        for b, pair in enumerate(zip(self.out_sets, self.in_sets)):
            for name, x in zip(("out", "in"), pair):
                if any(not 0 <= a < self.sub.num_nodes for a in x):
                    raise ValueError(f"{name} set of b{b} names a node outside F")
                if x and not self.sub.is_connected_set(x):
                    raise ValueError(f"{name} set of b{b} is not connected in F")

    @property
    def a_size(self) -> int:
        return self.sub.num_nodes

    @property
    def b_size(self) -> int:
        return len(self.out_sets)

    @property
    def n(self) -> int:
        return self.a_size + self.b_size


def realize(rep) -> Digraph:
    if isinstance(rep, IntervalRep):
        return Digraph(rep.n, [(v, w) for v in range(rep.n) for w in range(rep.n) if _meet(rep.s[v], rep.t[w])])
    if isinstance(rep, PermutationRep):
        return Digraph(rep.n, [(v, w) for v in range(rep.n) for w in range(rep.n) if _cross(rep.s[v], rep.t[w])])
    if isinstance(rep, RootedDirPathRep):
        ss = [rep.path_nodes(*p) for p in rep.s]
        ts = [rep.path_nodes(*p) for p in rep.t]
        return Digraph(rep.n, [(v, w) for v in range(rep.n) for w in range(rep.n) if ss[v] & ts[w]])
    if isinstance(rep, HDigraphRep):
        return Digraph(rep.n, [(v, w) for v in range(rep.n) for w in range(rep.n) if rep.s[v] & rep.t[w]])
    if isinstance(rep, HConvexRep):
        na = rep.a_size
        edges = []
        for b in range(rep.b_size):
            edges += [(na + b, a) for a in rep.out_sets[b]]
            edges += [(a, na + b) for a in rep.in_sets[b]]
        return Digraph(rep.n, edges)
    raise TypeError(f"not a representation: {type(rep).__name__}")


def is_reflexive(g: Digraph) -> bool:
    return all(g.has_loop(v) for v in g.vertices)


def is_adjusted(rep) -> bool:
    if isinstance(rep, PermutationRep):
        return all(s[0] == t[0] for s, t in zip(rep.s, rep.t))
    if isinstance(rep, RootedDirPathRep):
        return all(s[1] == t[1] for s, t in zip(rep.s, rep.t))
    raise TypeError("adjustedness is defined for permutation and rooted path representations")


def is_nice(rep: HConvexRep) -> bool:
    return all(o & i for o, i in zip(rep.out_sets, rep.in_sets))


def interval_to_permutation(rep: IntervalRep) -> PermutationRep:
    """S=[a,b] becomes the segment (a, b) and T=[c,d] becomes (d, c); crossings match overlaps."""
    return PermutationRep([(a, b) for a, b in rep.s], [(d, c) for c, d in rep.t])


def normalize_hdigraph(rep: HDigraphRep) -> tuple[HDigraphRep, list[int]]:
    """Subdivide F until every vertex has its own non-branching anchor in S_v ∩ T_v.

    The anchor starts as the smallest node of S_v ∩ T_v. When it is branching
    or already taken, the F-edge to its smallest neighbour is subdivided and
    the new node joins S_v, T_v and every set holding both ends of that edge.
    Anchors on isolated host vertices cannot move and are left shared.
    """
    sub = rep.sub
    s, t = [set(x) for x in rep.s], [set(x) for x in rep.t]
    anchors: list[int] = []
    used: set[int] = set()
    for v in range(rep.n):
        common = s[v] & t[v]
        if not common:
            raise ValueError(f"vertex {v} has no loop (S and T are disjoint)")
        a = min(common)
        if (sub.is_branching(a) or a in used) and sub.f.degree(a) > 0:
            y = min(sub.f.neighbors(a))
            sub, z = sub.subdivide(a, y)
            for x in s + t:
                if a in x and y in x:
                    x.add(z)
            s[v].add(z)
            t[v].add(z)
            a = z
        anchors.append(a)
        used.add(a)
    return HDigraphRep(sub, s, t), anchors


# ---------------------------------------------------------------- generators


def grid_index(n: int, i: int, j: int) -> int:
    """Vertex id of v_{i,j} (1-based i, j) in the n x n generators."""
    return (i - 1) * n + (j - 1)


def _grid_intervals(n: int) -> tuple[list[Interval], list[Interval]]:
    step = 2 * (n + 1)
    s: list[Interval] = [None] * (n * n)
    t: list[Interval] = [None] * (n * n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            wide = (step * j + 2 * i - 1, step * j + 2 * i + 1)
            point = (step * (j - 1) + 2 * i,) * 2
            k = grid_index(n, i, j)
            s[k], t[k] = (wide, point) if i % 2 else (point, wide)
    return s, t


def grid_orientation_edges(n: int) -> set[tuple[int, int]]:
    """The oriented grid the interval generator must reproduce.

    Horizontal edges leave the odd column. Vertical edges go up in odd
    columns and down in even ones.
    """
    out = set()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            v = grid_index(n, i, j)
            if i < n:
                w = grid_index(n, i + 1, j)
                out.add((v, w) if i % 2 else (w, v))
            if j < n:
                w = grid_index(n, i, j + 1)
                out.add((v, w) if i % 2 else (w, v))
    return out


def gen_grid_orientation(n: int) -> tuple[IntervalRep, Digraph]:
    """Interval digraph whose realization is an oriented n x n grid."""
    if n < 2:
        raise ValueError("n must be at least 2")
    s, t = _grid_intervals(n)
    rep = IntervalRep(s, t)
    g = realize(rep)
    if underlying(g) != grid_graph(n) or set(g.edges) != grid_orientation_edges(n):
        raise RuntimeError("grid generator produced an unexpected digraph")
    return rep, g


def tournament_uncovered(g: Digraph) -> list[tuple[int, int]]:
    """Unordered pairs with no arc or with arcs both ways."""
    return [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if g.has_edge(u, v) == g.has_edge(v, u)]


def gen_tournament(n: int) -> Digraph:
    """Tournament on v_{i,j} whose underlying graph is complete."""
    if n < 2:
        raise ValueError("n must be at least 2")
    edges = set()
    idx = lambda i, j: grid_index(n, i, j)  # noqa: E731
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    for i in range(1, n + 1):
        for j1 in range(1, n + 1):
            for j2 in range(j1 + 1, n + 1):
                edges.add((idx(i, j1), idx(i, j2)))
    for i in range(1, n):
        for j in range(1, n + 1):
            edges.add((idx(i, j), idx(i + 1, j)))
    for i1, j1 in cells:
        for i2, j2 in cells:
            if i1 >= i2:
                continue
            r = (i2 - i1) % 3
            if r == 0:
                edges.add((idx(i1, j1), idx(i2, j2)) if j1 >= j2 else (idx(i2, j2), idx(i1, j1)))
            elif r == 1 and (i2, j2) != (i1 + 1, j1):
                edges.add((idx(i2, j2), idx(i1, j1)))
            elif r == 2:
                edges.add((idx(i1, j1), idx(i2, j2)))
    g = Digraph(n * n, edges)
    bad = tournament_uncovered(g)
    if bad:
        raise RuntimeError(f"tournament rules leave pairs uncovered or doubled: {bad[:5]}")
    return g


def gen_p2_convex_grid(n: int) -> HConvexRep:
    """Bipartite P2-convex digraph built on the grid intervals; A holds the integer points."""
    if n < 2:
        raise ValueError("n must be at least 2")
    s, t = _grid_intervals(n)
    lo = min(x[0] for x in s + t)
    hi = max(x[1] for x in s + t)
    host = UndirectedGraph(2, [(0, 1)])
    sub = HSubdivision.from_counts(host, [hi - lo - 1])
    node = lambda p: 0 if p == lo else 1 if p == hi else 1 + p - lo  # noqa: E731
    span = lambda iv: frozenset(node(p) for p in range(iv[0], iv[1] + 1))  # noqa: E731
    outs, ins = [], []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            k = grid_index(n, i, j)
            o, m = (s[k], t[k]) if i % 2 else (t[k], s[k])
            outs.append(span(o))
            ins.append(span(m))
    rep = HConvexRep(sub, outs, ins)
    if grid_subdivision_points(n, rep) is None:
        raise RuntimeError("convex grid does not contain the subdivided grid")
    return rep


def grid_subdivision_points(n: int, rep: HConvexRep) -> dict[tuple[int, int], int] | None:
    """For every grid edge, an A-vertex adjacent to exactly its two ends, such that B plus
    these vertices induce the 1-subdivision of the grid. None if that fails."""
    g = realize(rep)
    na = rep.a_size
    nbrs = [(g.out_mask[a] | g.in_mask[a]) >> na for a in range(na)]
    chosen = {}
    for u, v in grid_graph(n).sorted_edges():
        want = (1 << u) | (1 << v)
        pick = next((a for a in range(na) if nbrs[a] == want), None)
        if pick is None:
            return None
        chosen[(u, v)] = pick
    pts = set(chosen.values())
    if len(pts) != len(chosen):
        return None
    # B is independent by construction, and each chosen point sees exactly its two ends
    return chosen


# ------------------------------------------------------- random instances


def random_reflexive_interval(n: int, rng: random.Random, span: int | None = None, reach: int = 3) -> IntervalRep:
    span = span if span is not None else 2 * n
    s, t = [], []
    for _ in range(n):
        a = rng.randint(0, span)
        s.append((a - rng.randint(0, reach), a + rng.randint(0, reach)))
        t.append((a - rng.randint(0, reach), a + rng.randint(0, reach)))
    return IntervalRep(s, t)


def random_interval(n: int, rng: random.Random, span: int | None = None, reach: int = 3) -> IntervalRep:
    span = span if span is not None else 2 * n
    iv = lambda: (lambda a: (a, a + rng.randint(0, reach)))(rng.randint(0, span))  # noqa: E731
    return IntervalRep([iv() for _ in range(n)], [iv() for _ in range(n)])


def random_adjusted_permutation(n: int, rng: random.Random, span: int | None = None) -> PermutationRep:
    span = span if span is not None else 2 * n
    s, t = [], []
    for _ in range(n):
        a = rng.randint(0, span)
        s.append((a, rng.randint(0, span)))
        t.append((a, rng.randint(0, span)))
    return PermutationRep(s, t)


def random_rooted_tree(m: int, rng: random.Random) -> list[int | None]:
    return [None] + [rng.randrange(x) for x in range(1, m)]


def random_adjusted_rdpath(n: int, rng: random.Random, m: int | None = None) -> RootedDirPathRep:
    m = m if m is not None else max(1, n)
    parent = random_rooted_tree(m, rng)
    probe = RootedDirPathRep(parent, [], [])
    s, t = [], []
    for _ in range(n):
        a = rng.randrange(m)
        anc = probe.ancestors(a)
        s.append((rng.choice(anc), a))
        t.append((rng.choice(anc), a))
    return RootedDirPathRep(parent, s, t)


def _grow(sub: HSubdivision, seed: int, size: int, rng: random.Random) -> frozenset[int]:
    got, frontier = {seed}, set(sub.f.neighbors(seed))
    while len(got) < size and frontier:
        x = rng.choice(sorted(frontier))
        got.add(x)
        frontier |= set(sub.f.neighbors(x))
        frontier -= got
    return frozenset(got)


def random_subdivision(h: UndirectedGraph, rng: random.Random, most: int = 4) -> HSubdivision:
    return HSubdivision.from_counts(h, [rng.randint(0, most) for _ in h.sorted_edges()])


def random_reflexive_hdigraph(h: UndirectedGraph, n: int, rng: random.Random, most: int = 4, size: int = 4) -> HDigraphRep:
    sub = random_subdivision(h, rng, most)
    s, t = [], []
    for _ in range(n):
        a = rng.randrange(sub.num_nodes)
        s.append(_grow(sub, a, rng.randint(1, size), rng))
        t.append(_grow(sub, a, rng.randint(1, size), rng))
    return HDigraphRep(sub, s, t)


def random_nice_hconvex(h: UndirectedGraph, nb: int, rng: random.Random, most: int = 4, size: int = 4) -> HConvexRep:
    sub = random_subdivision(h, rng, most)
    outs, ins = [], []
    for _ in range(nb):
        a = rng.randrange(sub.num_nodes)
        outs.append(_grow(sub, a, rng.randint(1, size), rng))
        ins.append(_grow(sub, a, rng.randint(1, size), rng))
    return HConvexRep(sub, outs, ins)
