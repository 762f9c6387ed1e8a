import random

import pytest

from bimim.digraph import Digraph, UndirectedGraph, biorientation
from bimim.lcvp import catalog_lcvp, homomorphism_matrix, LcvpMatrix
from bimim.oracle import (
    BudgetExceeded,
    OracleBudget,
    brute_lcvp,
    brute_nec,
    brute_power,
    brute_sigma_rho,
    exact_bimimwidth,
    exact_mimwidth,
    leaf_labelled_trees,
)
from bimim.sigma_rho import NAT, catalog_problem, dominates

from _util import dicycle, random_digraph


def test_sigma_rho_examples():
    assert brute_sigma_rho(dicycle(3), catalog_problem("kernel")) == (None, None)
    assert brute_sigma_rho(Digraph(4), catalog_problem("k-regular-induced-subdigraph", k=0))[0] == 4
    c5 = biorientation(UndirectedGraph(5, [(i, (i + 1) % 5) for i in range(5)]))
    value, witness = brute_sigma_rho(c5, catalog_problem("dominating-set"))
    assert value == 2 and dominates(c5, witness, catalog_problem("dominating-set"))


def test_lcvp_examples():
    assert brute_lcvp(dicycle(4), LcvpMatrix.from_rows([[(NAT, NAT)]])) == (frozenset(range(4)),)
    assert brute_lcvp(dicycle(3), homomorphism_matrix(Digraph(2, [(0, 1), (1, 0)]))) is None
    assert brute_lcvp(Digraph(1), catalog_lcvp("2-out-coloring")) is None


def test_budget():
    with pytest.raises(BudgetExceeded):
        brute_sigma_rho(Digraph(9), catalog_problem("kernel"))
    with pytest.raises(BudgetExceeded):
        exact_bimimwidth(Digraph(7))
    with pytest.raises(ValueError):
        OracleBudget(max_vertices=0)
    assert brute_sigma_rho(Digraph(9), catalog_problem("kernel"), OracleBudget(max_vertices=9))[0] == 9


def test_timeout():
    with pytest.raises(BudgetExceeded, match="timed out"):
        brute_lcvp(Digraph(8, [(i, (i + 1) % 8) for i in range(8)]), catalog_lcvp("2-out-coloring"),
                   OracleBudget(max_vertices=8, timeout=1e-9))


def test_tree_counts():
    # (2n-5)!! leaf-labelled unrooted binary trees
    assert [sum(1 for _ in leaf_labelled_trees(n)) for n in range(3, 8)] == [1, 3, 15, 105, 945]


def test_exact_width_examples():
    assert exact_bimimwidth(Digraph(2, [(0, 1)])) == 1
    p3 = UndirectedGraph(3, [(0, 1), (1, 2)])
    assert exact_bimimwidth(biorientation(p3)) == 2 and exact_mimwidth(p3) == 1
    assert exact_bimimwidth(Digraph(5)) == 0


def test_nec_examples():
    g = Digraph(3, [(0, 1), (1, 2)])
    assert brute_nec(g, set(), 1) == 1
    assert brute_nec(Digraph(4, [(0, 1), (2, 3)]), {0, 1}, 2) == 1


def test_power_matches_naive_search():
    rng = random.Random(1)
    for _ in range(30):
        g = random_digraph(rng, rng.randint(1, 6))
        assert brute_power(g, 1) == g


def test_exists_agrees_with_partition_oracle():
    rng = random.Random(2)
    for _ in range(60):
        g = random_digraph(rng, rng.randint(1, 6))
        for name in ("kernel", "efficient-dominating-set"):
            a = brute_sigma_rho(g, catalog_problem(name, objective="exists"))[0] is not None
            b = brute_lcvp(g, catalog_lcvp("exists-sigma-rho-set", problem=name)) is not None
            assert a == b
