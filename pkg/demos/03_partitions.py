"""
Partition problems and oriented colourings
==========================================

"""

import random

from bimim.cuts import random_branch_decomposition
from bimim.digraph import Digraph
from bimim.lcvp import catalog_lcvp, is_dq_partition, oriented_k_coloring, solve_lcvp
from bimim.oracle import brute_lcvp

rng = random.Random(3)
g = Digraph(7, [(u, v) for u in range(7) for v in range(7) if u != v and rng.random() < 0.3])
bd = random_branch_decomposition(7, rng)

# each matrix entry bounds how many out- and in-neighbours a part-i vertex may have in part j
for name, params in [
    ("2-out-coloring", {}),
    ("out-in-degree-partition", {"k1": 1, "k2": 1}),
    ("max-out-degree-partition", {"k1": 0, "k2": 1}),
    ("h-homomorphism", {"h": Digraph(2, [(0, 1), (1, 0)])}),
]:
    dq = catalog_lcvp(name, **params)
    res = solve_lcvp(g, bd, dq, witness=True)
    agree = res.exists == (brute_lcvp(g, dq) is not None)
    parts = [sorted(p) for p in res.parts] if res.exists else None
    line = f"{name:26s} exists {res.exists!s:5s} oracle agrees {agree}"
    if res.exists:
        line += f"  parts {parts} valid {is_dq_partition(g, res.parts, dq)}"
    print(line)

# oriented colourings: try every tournament on k vertices
dag = Digraph(7, [(u, v) for u, v in g.edges if u < v])
for k in range(1, 5):
    res = oriented_k_coloring(dag, bd, k)
    print("oriented", k, "coloring:", res.exists)
    if res.exists:
        break
