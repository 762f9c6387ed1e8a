"""Optimum (sigma+, sigma-, rho+, rho-)-dominating sets by dynamic programming."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import dp
from .cuts import BranchDecomposition
from .digraph import Digraph, mask_of


@dataclass(frozen=True)
class FiniteOrCofinite:
    """A finite set of naturals (``mode='fin'``) or the complement of one (``mode='cof'``)."""

    mode: str
    elems: frozenset[int]

    def __post_init__(self):
        if self.mode not in ("fin", "cof"):
            raise ValueError("mode must be 'fin' or 'cof'")
        if any(x < 0 for x in self.elems):
            raise ValueError("elements must be nonnegative")

    def __contains__(self, x: int) -> bool:
        return (x in self.elems) == (self.mode == "fin")

    @classmethod
    def finite(cls, *xs: int) -> FiniteOrCofinite:
        return cls("fin", frozenset(xs))

    @classmethod
    def cofinite(cls, *xs: int) -> FiniteOrCofinite:
        return cls("cof", frozenset(xs))

    @classmethod
    def naturals(cls) -> FiniteOrCofinite:
        return cls("cof", frozenset())

    @classmethod
    def at_least(cls, k: int) -> FiniteOrCofinite:
        return cls("cof", frozenset(range(k)))

    @classmethod
    def at_most(cls, k: int) -> FiniteOrCofinite:
        return cls("fin", frozenset(range(k + 1)))

    def __str__(self):
        if self.mode == "cof" and not self.elems:
            return "N"
        body = ",".join(map(str, sorted(self.elems)))
        return f"{{{body}}}" if self.mode == "fin" else f"N\\{{{body}}}"


NAT = FiniteOrCofinite.naturals()


def d_value(mu: FiniteOrCofinite) -> int:
    """How far counts must be tracked before membership in ``mu`` stops changing."""
    if not mu.elems:
        return 0
    return 1 + max(mu.elems)


OBJECTIVES = ("min", "max", "exists")


@dataclass(frozen=True)
class SigmaRhoProblem:
    sigma_out: FiniteOrCofinite
    sigma_in: FiniteOrCofinite
    rho_out: FiniteOrCofinite
    rho_in: FiniteOrCofinite
    objective: str = "min"

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")

    @property
    def d(self) -> int:
        return max(d_value(m) for m in (self.sigma_out, self.sigma_in, self.rho_out, self.rho_in))

    def reversed(self) -> SigmaRhoProblem:
        """Same problem for the arc-reversed digraph (in/out restrictions swapped)."""
        return SigmaRhoProblem(self.sigma_in, self.sigma_out, self.rho_in, self.rho_out, self.objective)

    def accepts(self, member: bool, n_out: int, n_in: int) -> bool:
        if member:
            return n_out in self.sigma_out and n_in in self.sigma_in
        return n_out in self.rho_out and n_in in self.rho_in


def dominates(g: Digraph, s: Iterable[int] | int, prob: SigmaRhoProblem) -> bool:
    """Whether ``s`` (sigma+, sigma-, rho+, rho-)-dominates ``g``; a loop counts v as its own neighbour."""
    sm = s if isinstance(s, int) else mask_of(s)
    for v in g.vertices:
        if not prob.accepts(bool(sm >> v & 1), (g.out_mask[v] & sm).bit_count(), (g.in_mask[v] & sm).bit_count()):
            return False
    return True


def catalog_problem(name: str, k: int | None = None, l: int | None = None, objective: str | None = None) -> SigmaRhoProblem:
    """Named locally checkable vertex-subset problems."""
    F, C = FiniteOrCofinite.finite, FiniteOrCofinite.cofinite

    def need(x, what):
        if x is None:
            raise ValueError(f"problem {name!r} needs parameter {what}")
        return x

    rows = {
        "kernel": lambda: (F(0), F(0), C(0), NAT, "min"),
        "kl-out-kernel": lambda: (
            FiniteOrCofinite.at_most(need(k, "k") - 1), F(0), FiniteOrCofinite.at_least(need(l, "l")), NAT, "min"),
        "dominating-set": lambda: (NAT, NAT, NAT, C(0), "min"),
        "independent-dominating-set": lambda: (F(0), F(0), NAT, C(0), "min"),
        "in-dominating-set": lambda: (NAT, NAT, C(0), NAT, "min"),
        "twin-dominating-set": lambda: (NAT, NAT, C(0), C(0), "min"),
        "k-dominating-set": lambda: (NAT, NAT, NAT, FiniteOrCofinite.at_least(need(k, "k")), "min"),
        "total-dominating-set": lambda: (NAT, C(0), NAT, C(0), "min"),
        "efficient-dominating-set": lambda: (F(0), F(0), NAT, F(1), "min"),
        "efficient-total-dominating-set": lambda: (NAT, F(1), NAT, F(1), "min"),
        "k-regular-induced-subdigraph": lambda: (F(need(k, "k")), F(need(k, "k")), NAT, NAT, "max"),
    }
    if name not in rows:
        raise ValueError(f"unknown problem {name!r}; known: {', '.join(sorted(rows))}")
    so, si, ro, ri, default = rows[name]()
    return SigmaRhoProblem(so, si, ro, ri, objective or default)


@dataclass(frozen=True)
class SigmaRhoResult:
    """``value`` is the optimum size (1 for a satisfied ``exists``); None when infeasible."""

    value: int | None
    witness: frozenset[int] | None

    @property
    def feasible(self) -> bool:
        return self.value is not None


def _leaf_table(g: Digraph, prob: SigmaRhoProblem, sign: int):
    def leaf(node: dp.Node, q: int) -> np.ndarray:
        v = node.vertex
        inside, outside = node.inside, node.outside
        table = np.full((len(inside), len(outside)), np.inf)
        i_out, i_in = inside.index_of(0), inside.index_of(1 << v)
        loop = 1 if g.has_loop(v) else 0
        for j, r in enumerate(outside.witnesses):
            c_out = (g.out_mask[v] & r).bit_count()
            c_in = (g.in_mask[v] & r).bit_count()
            if prob.accepts(False, c_out, c_in):
                table[i_out, j] = min(table[i_out, j], 0.0)
            if prob.accepts(True, c_out + loop, c_in + loop):
                table[i_in, j] = min(table[i_in, j], float(sign))
        return table

    return leaf


def solve_sigma_rho(
    g: Digraph,
    bd: BranchDecomposition,
    prob: SigmaRhoProblem,
    skeleton: dp.Skeleton | None = None,
    witness: bool = True,
) -> SigmaRhoResult:
    """Optimum (Sigma, Rho)-dominating set of ``g`` using the decomposition ``bd``."""
    d = max(1, prob.d)
    if skeleton is None:
        skeleton = dp.build_skeleton(g, bd, d)
    elif skeleton.d != d or skeleton.g is not g and skeleton.g != g:
        raise ValueError(f"skeleton was built for cap {skeleton.d}, problem needs {d}")
    bd.check_for(g)
    sign = -1 if prob.objective == "max" else 1
    ring = dp.Semiring("min")
    tables = dp.run(skeleton, 1, _leaf_table(g, prob, sign), ring)
    best = tables[skeleton.root][0, 0]
    if not np.isfinite(best):
        return SigmaRhoResult(None, None)
    sol = None
    if witness:
        picks = dp.traceback(skeleton, 1, tables, ring, lambda t, qi, qo: tables[t][qi, qo])
        sol = frozenset(v for v, val in picks.items() if val != 0)
    value = 1 if prob.objective == "exists" else int(round(sign * best))
    return SigmaRhoResult(value, sol)



def dominates_part(g: Digraph, x: int, y: int, a: int, prob: SigmaRhoProblem) -> bool:
    """Whether the pair ``(x, y)`` with ``x`` inside ``a`` dominates the part ``a`` (all bitmasks).

    Members of ``x`` need their counts into ``x | y`` in the sigma sets, the
    rest of ``a`` in the rho sets.
    """
    s = x | y
    for v in range(g.n):
        if a >> v & 1 and not prob.accepts(bool(x >> v & 1), (g.out_mask[v] & s).bit_count(), (g.in_mask[v] & s).bit_count()):
            return False
    return True
