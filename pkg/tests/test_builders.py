import random

import pytest

from bimim.builders import (
    BUILDERS,
    build_adjusted_permutation,
    build_adjusted_rdpath,
    build_nice_hconvex,
    build_reflexive_hdigraph,
    build_reflexive_interval,
    normalize_rdpath,
)
from bimim.cuts import decomposition_width
from bimim.digraph import UndirectedGraph
from bimim.representations import (
    HConvexRep,
    HDigraphRep,
    HSubdivision,
    IntervalRep,
    PermutationRep,
    RootedDirPathRep,
    gen_p2_convex_grid,
    random_adjusted_permutation,
    random_adjusted_rdpath,
    random_nice_hconvex,
    random_reflexive_hdigraph,
    random_reflexive_interval,
    realize,
)

from _util import C3, P2


def test_interval_single_vertex():
    rep = build_reflexive_interval(IntervalRep([(0, 1)], [(1, 2)]), verify=True)
    assert rep.decomposition.num_nodes == 2 and rep.measured == 0 and rep.guarantee == 2


def test_interval_equal_anchors_tie_by_index():
    rep = IntervalRep([(0, 3), (0, 3), (5, 5)], [(2, 4), (2, 2), (5, 6)])
    out = build_reflexive_interval(rep, verify=True)
    assert out.decomposition.leaf_order() == [0, 1, 2]
    assert out.measured <= 2


def test_interval_rejects_loopless_vertex():
    with pytest.raises(ValueError, match="no loop"):
        build_reflexive_interval(IntervalRep([(0, 1)], [(3, 4)]))


def test_interval_random_bound():
    rng = random.Random(1)
    for _ in range(60):
        out = build_reflexive_interval(random_reflexive_interval(rng.randint(1, 20), rng), verify=True)
        assert out.measured <= 2 and out.decomposition.is_linear()


def test_permutation_two_vertices():
    out = build_adjusted_permutation(PermutationRep([(3, 1), (1, 4)], [(3, 0), (1, 0)]), verify=True)
    assert out.measured <= 2
    assert out.decomposition.leaf_order() == [1, 0]


def test_permutation_duplicate_alpha_and_bound():
    rng = random.Random(2)
    for _ in range(60):
        rep = random_adjusted_permutation(rng.randint(1, 20), rng, span=5)
        out = build_adjusted_permutation(rep, verify=True)
        assert out.measured <= 4
        order = out.decomposition.leaf_order()
        keys = [(rep.s[v][0], v) for v in order]
        assert keys == sorted(keys)


def test_permutation_rejects_unadjusted():
    with pytest.raises(ValueError, match="adjusted"):
        build_adjusted_permutation(PermutationRep([(0, 1)], [(2, 1)]))


def test_rdpath_star():
    # root 0 with leaves 1..5; every path runs from the root to one leaf
    parent = [None, 0, 0, 0, 0, 0]
    paths = [(0, x) for x in range(1, 6)]
    out = build_adjusted_rdpath(RootedDirPathRep(parent, paths, paths), verify=True)
    assert out.measured <= 2


def test_rdpath_biorientation_of_path():
    # a directed path of tree nodes; vertex v sits on node v and on node v+1
    m = 8
    parent = [None] + list(range(m - 1))
    s = [(v, v + 1) for v in range(m - 1)]
    out = build_adjusted_rdpath(RootedDirPathRep(parent, s, s), verify=True)
    assert out.measured <= 2


def test_rdpath_single_vertex():
    out = build_adjusted_rdpath(RootedDirPathRep([None], [(0, 0)], [(0, 0)]), verify=True)
    assert out.decomposition.num_nodes == 2 and out.measured == 0


def test_rdpath_rewrites_preserve_digraph():
    rng = random.Random(3)
    for _ in range(40):
        rep = random_adjusted_rdpath(rng.randint(1, 14), rng, m=rng.randint(1, 10))
        g = realize(rep)
        snaps = []
        norm, anchors = normalize_rdpath(rep, trace=snaps.append)
        assert all(realize(x) == g for x in snaps)
        assert len(set(anchors)) == rep.n
        kids = [0] * norm.num_nodes
        for p in norm.parent:
            if p is not None:
                kids[p] += 1
        assert max(kids) <= 2 and all(kids[a] <= 1 for a in anchors)
        out = build_adjusted_rdpath(rep, verify=True)
        assert out.measured <= 2


def test_hdigraph_p2_and_c3():
    rng = random.Random(4)
    for h, bound in ((P2, 12), (C3, 36)):
        for _ in range(30):
            out = build_reflexive_hdigraph(random_reflexive_hdigraph(h, rng.randint(1, 20), rng), verify=True)
            assert out.guarantee == bound and out.measured <= bound


def test_hdigraph_edgeless_host():
    h = UndirectedGraph(1)
    sub = HSubdivision.from_counts(h, [])
    rep = HDigraphRep(sub, [{0}] * 3, [{0}] * 3)
    out = build_reflexive_hdigraph(rep, verify=True)
    assert out.guarantee == 2 and out.measured <= 2


def test_hdigraph_disconnected_host():
    h = UndirectedGraph(4, [(0, 1), (2, 3)])
    rng = random.Random(5)
    for _ in range(20):
        out = build_reflexive_hdigraph(random_reflexive_hdigraph(h, rng.randint(1, 15), rng), verify=True)
        assert out.guarantee == 24 and out.measured <= 24


def test_hconvex_rejects_grid_family():
    with pytest.raises(ValueError, match="nice"):
        build_nice_hconvex(gen_p2_convex_grid(3))


def test_hconvex_single_b():
    sub = HSubdivision.from_counts(P2, [0])
    out = build_nice_hconvex(HConvexRep(sub, [{0}], [{0}]), verify=True)
    assert out.measured <= 2


def test_hconvex_random_p2():
    rng = random.Random(6)
    for _ in range(40):
        out = build_nice_hconvex(random_nice_hconvex(P2, rng.randint(1, 12), rng), verify=True)
        assert out.measured <= 12
        order = out.decomposition.leaf_order()
        assert sorted(order) == list(range(out.decomposition.n))


def test_builder_registry():
    assert set(BUILDERS) == {"reflexive-interval", "adjusted-permutation", "adjusted-rdpath", "reflexive-hdigraph", "nice-hconvex"}


def test_measured_matches_width():
    rng = random.Random(7)
    rep = random_reflexive_interval(12, rng)
    out = build_reflexive_interval(rep, verify=True)
    assert out.measured == decomposition_width(realize(rep), out.decomposition)
    assert build_reflexive_interval(rep).measured is None
