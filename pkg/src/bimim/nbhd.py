"""d-bi-neighborhood descriptions and enumeration of their equivalence classes.

For ``X`` a subset of ``A``, the description of ``X`` records, for every vertex
``u`` outside ``A``, how many in-neighbours of ``u`` lie in ``X`` and how many
out-neighbours of ``u`` lie in ``X``, both capped at ``d``. Two subsets are
equivalent exactly when their descriptions agree.

``ClassIndex`` stores one row per class. Columns only cover outside vertices
that can ever carry a nonzero count (outside vertices with an in-neighbour,
resp. out-neighbour, in ``A``); the remaining entries are identically zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .digraph import Digraph, bits, mask_of


@dataclass(frozen=True)
class NbhDescription:
    """Capped in/out counting vectors over the complement of ``a_mask``."""

    d: int
    a_mask: int
    domain: tuple[int, ...]
    out_vec: tuple[int, ...]
    in_vec: tuple[int, ...]

    def out_of(self, u: int) -> int:
        return self.out_vec[self.domain.index(u)]

    def in_of(self, u: int) -> int:
        return self.in_vec[self.domain.index(u)]

    def as_dict(self) -> dict[int, tuple[int, int]]:
        return {u: (o, i) for u, o, i in zip(self.domain, self.out_vec, self.in_vec)}


def _as_mask(s: Iterable[int] | int) -> int:
    return s if isinstance(s, int) else mask_of(s)


def describe(g: Digraph, a: Iterable[int] | int, d: int, x: Iterable[int] | int) -> NbhDescription:
    """The d-bi-neighborhood of ``x`` with respect to ``a``."""
    amask, xmask = _as_mask(a), _as_mask(x)
    if d < 0:
        raise ValueError("cap d must be nonnegative")
    if xmask & ~amask:
        raise ValueError("x must be a subset of a")
    domain = tuple(bits(g.full_mask & ~amask))
    out_vec = tuple(min(d, (g.in_mask[u] & xmask).bit_count()) for u in domain)
    in_vec = tuple(min(d, (g.out_mask[u] & xmask).bit_count()) for u in domain)
    return NbhDescription(d, amask, domain, out_vec, in_vec)


def combine_descriptions(da: NbhDescription, db: NbhDescription) -> NbhDescription:
    """Description of ``X | Y`` over ``A | B`` from descriptions of ``X`` (over A) and ``Y`` (over B)."""
    if da.d != db.d:
        raise ValueError(f"cap mismatch: {da.d} != {db.d}")
    if da.a_mask & db.a_mask:
        raise ValueError("sides of combined descriptions overlap")
    d = da.d
    amask = da.a_mask | db.a_mask
    ma, mb = da.as_dict(), db.as_dict()
    domain = tuple(u for u in da.domain if not amask >> u & 1)
    out_vec = tuple(min(d, ma[u][0] + mb[u][0]) for u in domain)
    in_vec = tuple(min(d, ma[u][1] + mb[u][1]) for u in domain)
    return NbhDescription(d, amask, domain, out_vec, in_vec)


class ClassIndex:
    """All classes of the d-bi-neighborhood equivalence over subsets of ``A``.

    ``rows[k]`` is the compressed description of class ``k`` and
    ``witnesses[k]`` the first subset (bitmask) found with it.
    """

    def __init__(self, g: Digraph, a_mask: int, d: int):
        self.g = g
        self.a_mask = a_mask
        self.d = d
        outside = g.full_mask & ~a_mask
        # out-part: u outside A with an in-neighbour in A; in-part: with an out-neighbour in A
        self.dom_out = tuple(u for u in bits(outside) if g.in_mask[u] & a_mask)
        self.dom_in = tuple(u for u in bits(outside) if g.out_mask[u] & a_mask)
        self.width = len(self.dom_out) + len(self.dom_in)
        self.rows = np.zeros((0, self.width), dtype=np.uint8)
        self.witnesses: list[int] = []
        self.lookup: dict[bytes, int] = {}
        self.insertions = 0

    def __len__(self) -> int:
        return len(self.witnesses)

    def contribution(self, v: int) -> np.ndarray:
        """Row added to a description when vertex ``v`` of A joins the subset."""
        g = self.g
        row = [1 if g.out_mask[v] >> u & 1 else 0 for u in self.dom_out]
        row += [1 if g.in_mask[v] >> u & 1 else 0 for u in self.dom_in]
        return np.array(row, dtype=np.uint8)

    def row_of(self, x: int) -> np.ndarray:
        g, d = self.g, self.d
        row = [min(d, (g.in_mask[u] & x).bit_count()) for u in self.dom_out]
        row += [min(d, (g.out_mask[u] & x).bit_count()) for u in self.dom_in]
        return np.array(row, dtype=np.uint8)

    def index_of(self, x: Iterable[int] | int) -> int:
        """Class index of the subset ``x`` of A."""
        xm = _as_mask(x)
        if xm & ~self.a_mask:
            raise ValueError("subset is not contained in the side of this index")
        return self.lookup[self.row_of(xm).tobytes()]

    def index_of_row(self, row: np.ndarray) -> int:
        return self.lookup[np.ascontiguousarray(row, dtype=np.uint8).tobytes()]

    def description(self, k: int) -> NbhDescription:
        """Full (uncompressed) description of class ``k``."""
        g = self.g
        domain = tuple(bits(g.full_mask & ~self.a_mask))
        row = self.rows[k]
        outs = dict(zip(self.dom_out, row[: len(self.dom_out)].tolist()))
        ins = dict(zip(self.dom_in, row[len(self.dom_out):].tolist()))
        return NbhDescription(
            self.d,
            self.a_mask,
            domain,
            tuple(outs.get(u, 0) for u in domain),
            tuple(ins.get(u, 0) for u in domain),
        )

    def items(self):
        for k, w in enumerate(self.witnesses):
            yield self.description(k), w

    def projection(self, target: "ClassIndex") -> np.ndarray:
        """Rows of this index restricted (zero-padded) to the columns of ``target``."""
        pos_out = {u: i for i, u in enumerate(self.dom_out)}
        pos_in = {u: len(self.dom_out) + i for i, u in enumerate(self.dom_in)}
        cols = [pos_out.get(u, -1) for u in target.dom_out] + [pos_in.get(u, -1) for u in target.dom_in]
        padded = np.concatenate([self.rows, np.zeros((len(self), 1), dtype=np.uint8)], axis=1)
        return padded[:, cols]


def enumerate_classes(g: Digraph, a: Iterable[int] | int, d: int) -> ClassIndex:
    """Breadth-by-augmentation enumeration of every class, each with a witness.

    Starting from the empty set, each round extends every newly found witness
    by one vertex of A; a round that discovers no new description ends the search.
    """
    if d < 0:
        raise ValueError("cap d must be nonnegative")
    amask = _as_mask(a)
    idx = ClassIndex(g, amask, d)
    empty = np.zeros(idx.width, dtype=np.uint8)
    rows = [empty]
    idx.lookup[empty.tobytes()] = 0
    idx.witnesses.append(0)
    idx.insertions = 1
    # vertices of A without arcs across the cut never change a description
    movers = [v for v in bits(amask) if (g.out_mask[v] | g.in_mask[v]) & ~amask]
    if movers and idx.width:
        # plain byte rows: the frontier is small and numpy call overhead dominates here
        contrib = [idx.contribution(v).tobytes() for v in movers]
        table = [bytes(min(d, a + b) for b in range(2)) for a in range(d + 1)]
        keys = [empty.tobytes()]
        frontier = [0]
        while frontier:
            new_frontier = []
            for k in frontier:
                wit, row = idx.witnesses[k], keys[k]
                for v, c in zip(movers, contrib):
                    if wit >> v & 1:
                        continue
                    key = bytes(table[a][b] for a, b in zip(row, c))
                    if key not in idx.lookup:
                        idx.lookup[key] = len(keys)
                        keys.append(key)
                        idx.witnesses.append(wit | 1 << v)
                        idx.insertions += 1
                        new_frontier.append(len(keys) - 1)
            frontier = new_frontier
        rows = [np.frombuffer(k, dtype=np.uint8) for k in keys]
    idx.rows = np.stack(rows) if idx.width else np.zeros((1, 0), dtype=np.uint8)
    return idx


class QClassIndex:
    """q-fold product of a base ``ClassIndex``; tuple ``t`` has index ``sum t[i] * N**i``."""

    def __init__(self, base: ClassIndex, q: int):
        if q < 1:
            raise ValueError("q must be >= 1")
        self.base = base
        self.q = q

    def __len__(self) -> int:
        return len(self.base) ** self.q

    def tuple_of(self, k: int) -> tuple[int, ...]:
        n = len(self.base)
        out = []
        for _ in range(self.q):
            k, r = divmod(k, n)
            out.append(r)
        return tuple(out)

    def index_of_tuple(self, t: Sequence[int]) -> int:
        n = len(self.base)
        return sum(c * n**i for i, c in enumerate(t))

    def items(self):
        for t in itertools.product(range(len(self.base)), repeat=self.q):
            t = t[::-1]
            yield tuple(self.base.description(c) for c in t), tuple(self.base.witnesses[c] for c in t)


def q_enumerate_classes(g: Digraph, a: Iterable[int] | int, d: int, q: int) -> QClassIndex:
    return QClassIndex(enumerate_classes(g, a, d), q)

