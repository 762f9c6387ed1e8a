"""Loop-allowing simple digraphs and undirected graphs on dense integer vertices.

Adjacency is kept twice: as sorted index tuples and as int bitmasks
(bit ``w`` of ``out_mask[v]`` is set iff ``(v, w)`` is an edge).
"""

from __future__ import annotations

from collections import deque
from typing import Iterable


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in ascending order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Digraph:
    """Immutable digraph on vertices ``0..n-1``; loops allowed, no multi-edges."""

    __slots__ = ("n", "edges", "out_mask", "in_mask", "_out", "_in")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            es.add((u, v))
        out_mask = [0] * n
        in_mask = [0] * n
        for u, v in es:
            out_mask[u] |= 1 << v
            in_mask[v] |= 1 << u
        self.n = n
        self.edges = frozenset(es)
        self.out_mask = tuple(out_mask)
        self.in_mask = tuple(in_mask)
        self._out = tuple(tuple(bits(m)) for m in out_mask)
        self._in = tuple(tuple(bits(m)) for m in in_mask)

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.out_mask[u] >> v & 1)

    def has_loop(self, v: int) -> bool:
        return bool(self.out_mask[v] >> v & 1)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def reverse(self) -> Digraph:
        """The digraph with every arc flipped."""
        return Digraph(self.n, ((v, u) for u, v in self.edges))

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Digraph(n={self.n}, edges={sorted(self.edges)})"


class UndirectedGraph:
    """Immutable simple undirected graph on ``0..n-1``; edges stored as sorted pairs."""

    __slots__ = ("n", "edges", "adj_mask", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {{{u}, {v}}} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"loop at {u} in a simple graph")
            es.add((min(u, v), max(u, v)))
        adj = [0] * n
        for u, v in es:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.edges = frozenset(es)
        self.adj_mask = tuple(adj)
        self._adj = tuple(tuple(bits(m)) for m in adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj_mask[u] >> v & 1)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                x = queue.popleft()
                comp.append(x)
                for y in self._adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def __eq__(self, other):
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"UndirectedGraph(n={self.n}, edges={sorted(self.edges)})"


def underlying(g: Digraph) -> UndirectedGraph:
    return UndirectedGraph(g.n, ((u, v) for u, v in g.edges if u != v))


def biorientation(h: UndirectedGraph) -> Digraph:
    return Digraph(h.n, [e for u, v in h.edges for e in ((u, v), (v, u))])


def _bfs_within(g: Digraph, start: int, r: int, forward: bool = True) -> dict[int, int]:
    """Distances (<= r) from ``start`` along (forward) or against arcs."""
    step = g.out_neighbors if forward else g.in_neighbors
    dist = {start: 0}
    frontier = [start]
    for d in range(1, r + 1):
        nxt = []
        for x in frontier:
            for y in step(x):
                if y not in dist:
                    dist[y] = d
                    nxt.append(y)
        frontier = nxt
        if not frontier:
            break
    return dist


def power(g: Digraph, r: int) -> Digraph:
    """Arc ``(x, y)`` iff some directed walk of length 1..r leads from x to y.

    For ``x == y`` this means a closed walk of length <= r through x.
    """
    if r < 1:
        raise ValueError("power exponent must be >= 1")
    edges = []
    for x in g.vertices:
        # reach[k]: vertices reachable by a walk of length exactly 1..k
        reached = 0
        frontier = g.out_mask[x]
        reached |= frontier
        for _ in range(r - 1):
            nxt = 0
            for y in bits(frontier):
                nxt |= g.out_mask[y]
            nxt &= ~reached
            if not nxt:
                break
            reached |= nxt
            frontier = nxt
        edges.extend((x, y) for y in bits(reached))
    return Digraph(g.n, edges)


def ball(g: Digraph, v: int, r: int, direction: str = "out") -> set[int]:
    """Vertices within directed distance ``r`` of ``v`` (out) or from which ``v`` is within ``r`` (in)."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if direction not in ("out", "in"):
        raise ValueError("direction must be 'out' or 'in'")
    return set(_bfs_within(g, v, r, forward=(direction == "out")))


def induced_subdigraph(g: Digraph, s: Iterable[int]) -> Digraph:
    """Subdigraph induced on ``s``, relabelled ``0..|s|-1`` in ascending order of ``s``."""
    keep = sorted(set(s))
    for v in keep:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(keep)}
    return Digraph(len(keep), ((pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos))


def grid_graph(n: int, m: int | None = None) -> UndirectedGraph:
    """The n x m grid; vertex ``(i, j)`` (0-based) gets index ``i * m + j``."""
    m = n if m is None else m
    edges = []
    for i in range(n):
        for j in range(m):
            if i + 1 < n:
                edges.append((i * m + j, (i + 1) * m + j))
            if j + 1 < m:
                edges.append((i * m + j, i * m + j + 1))
    return UndirectedGraph(n * m, edges)
