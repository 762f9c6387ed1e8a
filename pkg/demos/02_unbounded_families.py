"""
Families where the width grows
==============================

"""

from bimim.cuts import cut_values, decomposition_width, linear_decomposition
from bimim.digraph import underlying, grid_graph
from bimim.representations import gen_grid_orientation, gen_p2_convex_grid, gen_tournament, realize

# interval digraphs without loops can realize an oriented grid
for n in range(2, 7):
    rep, g = gen_grid_orientation(n)
    order = linear_decomposition(list(range(g.n)))
    print(f"grid {n}x{n}: underlying grid {underlying(g) == grid_graph(n)}, row-major width {decomposition_width(g, order)}")

# a tournament hides the grid in its underlying graph; one balanced cut shows the growth
for n in range(2, 6):
    t = gen_tournament(n)
    half = set(range(t.n // 2))
    print(f"tournament on {t.n} vertices: bimim of the first-half cut {cut_values(t, half).bimim}")

# a bipartite P2-convex digraph containing the subdivided grid
rep = gen_p2_convex_grid(3)
g = realize(rep)
print("convex grid: A side", rep.a_size, "B side", rep.b_size, "arcs", len(g.edges))
