"""
Dominating sets on a reflexive interval digraph
===============================================

"""

import random

from bimim.builders import build_reflexive_interval
from bimim.cuts import cut_widths
from bimim.representations import random_reflexive_interval, realize
from bimim.sigma_rho import catalog_problem, dominates, solve_sigma_rho

# every vertex gets a source and a target interval that overlap, so every vertex has a loop
rng = random.Random(0)
rep = random_reflexive_interval(60, rng)
g = realize(rep)
print("vertices", g.n, "arcs", len(g.edges))

# order by anchor points; the linear decomposition is promised width 2
report = build_reflexive_interval(rep, verify=True)
print("guarantee", report.guarantee, "measured", report.measured)

# the cut profile along the order
widths = [cv.bimim for cv in cut_widths(g, report.decomposition).values()]
print("cuts per bimim value", {w: widths.count(w) for w in sorted(set(widths))})

# loops count as self-neighbours, so no kernel exists on a reflexive digraph
for name in ("kernel", "dominating-set", "independent-dominating-set", "total-dominating-set"):
    prob = catalog_problem(name)
    res = solve_sigma_rho(g, report.decomposition, prob)
    ok = res.feasible and dominates(g, res.witness, prob)
    print(f"{name:28s} value {res.value}  witness checked {ok}")
