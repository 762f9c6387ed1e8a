"""
Kernels at distance two
=======================

"""

from bimim.cuts import decomposition_width, linear_decomposition
from bimim.digraph import Digraph, power
from bimim.distance import DistanceProblem, distance_dominates, solve_distance_sigma_rho
from bimim.sigma_rho import catalog_problem

kernel = catalog_problem("kernel")

# a distance-2 kernel is a kernel of the square; only cycle lengths divisible by 3 have one
for n in range(4, 13):
    g = Digraph(n, [(i, (i + 1) % n) for i in range(n)])
    bd = linear_decomposition(list(range(n)))
    dp = DistanceProblem(2, kernel)
    res = solve_distance_sigma_rho(g, bd, dp)
    w, w2 = decomposition_width(g, bd), decomposition_width(power(g, 2), bd)
    check = res.feasible and distance_dominates(g, res.witness, dp)
    print(f"C{n:<3d} width {w} -> {w2} after squaring, 2-kernel {res.value}, checked {check}")
