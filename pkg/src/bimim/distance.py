"""Distance-r variants, solved on the r-th power of the digraph."""

from __future__ import annotations

from dataclasses import dataclass

from .cuts import BranchDecomposition
from .digraph import Digraph, ball, mask_of, power
from .lcvp import LcvpMatrix, LcvpResult, solve_lcvp
from .sigma_rho import SigmaRhoProblem, SigmaRhoResult, solve_sigma_rho


@dataclass(frozen=True)
class DistanceProblem:
    r: int
    base: SigmaRhoProblem | LcvpMatrix

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be >= 1")


def _ball_masks(g: Digraph, r: int, strict: bool) -> tuple[list[int], list[int]]:
    """Per-vertex out/in count masks.

    By default these are the neighbourhoods in the r-th power, so v counts
    itself only when a closed walk of length <= r passes through it. With
    ``strict`` the literal balls are used and v always counts itself.
    """
    if strict:
        outs = [mask_of(ball(g, v, r, "out")) for v in g.vertices]
        ins = [mask_of(ball(g, v, r, "in")) for v in g.vertices]
        return outs, ins
    gr = power(g, r)
    return list(gr.out_mask), list(gr.in_mask)


def distance_dominates(g: Digraph, s, dprob: DistanceProblem, strict: bool = False) -> bool:
    if not isinstance(dprob.base, SigmaRhoProblem):
        raise TypeError("distance_dominates needs a sigma-rho base problem")
    sm = s if isinstance(s, int) else mask_of(s)
    outs, ins = _ball_masks(g, dprob.r, strict)
    return all(
        dprob.base.accepts(bool(sm >> v & 1), (outs[v] & sm).bit_count(), (ins[v] & sm).bit_count())
        for v in g.vertices
    )


def is_distance_partition(g: Digraph, parts, dprob: DistanceProblem, strict: bool = False) -> bool:
    if not isinstance(dprob.base, LcvpMatrix):
        raise TypeError("is_distance_partition needs a matrix base problem")
    masks = [p if isinstance(p, int) else mask_of(p) for p in parts]
    outs, ins = _ball_masks(g, dprob.r, strict)
    for i, m in enumerate(masks):
        for v in g.vertices:
            if m >> v & 1 and not dprob.base.accepts(
                i, [(outs[v] & x).bit_count() for x in masks], [(ins[v] & x).bit_count() for x in masks]
            ):
                return False
    return True


def solve_distance_sigma_rho(g: Digraph, bd: BranchDecomposition, dprob: DistanceProblem) -> SigmaRhoResult:
    if not isinstance(dprob.base, SigmaRhoProblem):
        raise TypeError("base problem must be a SigmaRhoProblem")
    return solve_sigma_rho(power(g, dprob.r), bd, dprob.base)


def solve_distance_lcvp(g: Digraph, bd: BranchDecomposition, dprob: DistanceProblem, witness: bool = False) -> LcvpResult:
    if not isinstance(dprob.base, LcvpMatrix):
        raise TypeError("base problem must be an LcvpMatrix")
    return solve_lcvp(power(g, dprob.r), bd, dprob.base, witness=witness)
