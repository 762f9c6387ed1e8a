import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bimim.digraph import (
    Digraph,
    UndirectedGraph,
    ball,
    biorientation,
    grid_graph,
    induced_subdigraph,
    mask_of,
    power,
    underlying,
)
from bimim.representations import gen_grid_orientation

from _util import dicycle, dipath


@st.composite
def digraphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return Digraph(n, chosen)


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if not pairs:
        return UndirectedGraph(n)
    return UndirectedGraph(n, draw(st.lists(st.sampled_from(pairs), unique=True)))


def test_digraph_rejects_bad_endpoints():
    with pytest.raises(ValueError):
        Digraph(2, [(0, 2)])


def test_underlying_drops_loops_and_merges_directions():
    g = Digraph(3, [(0, 1), (1, 0), (2, 2)])
    assert underlying(g) == UndirectedGraph(3, [(0, 1)])
    assert underlying(Digraph(3)) == UndirectedGraph(3)


def test_underlying_of_grid_orientation():
    _, g = gen_grid_orientation(4)
    assert underlying(g) == grid_graph(4)


def test_biorientation_examples():
    assert biorientation(UndirectedGraph(2, [(0, 1)])).edges == {(0, 1), (1, 0)}
    tri = biorientation(UndirectedGraph(3, [(0, 1), (1, 2), (0, 2)]))
    assert len(tri.edges) == 6


@given(graphs())
def test_underlying_inverts_biorientation(h):
    assert underlying(biorientation(h)) == h


@given(digraphs())
def test_in_and_out_indexes_are_transposes(g):
    for u in g.vertices:
        for v in g.vertices:
            assert (g.out_mask[u] >> v & 1) == (g.in_mask[v] >> u & 1) == g.has_edge(u, v)


def test_power_examples():
    g = dipath(3)
    assert power(g, 2).edges == {(0, 1), (1, 2), (0, 2)}
    full = {(u, v) for u in range(3) for v in range(3)}
    assert power(dicycle(3), 3).edges == full
    with pytest.raises(ValueError):
        power(g, 0)


@given(digraphs())
def test_power_one_is_identity(g):
    assert power(g, 1) == g


def _reach_within(g, x, r):
    seen, layer = set(), {x}
    for _ in range(r):
        layer = {w for u in layer for w in g.out_neighbors(u)}
        seen |= layer
    return seen


@settings(max_examples=60)
@given(digraphs(), st.integers(1, 4))
def test_power_matches_walk_search(g, r):
    gr = power(g, r)
    for x in g.vertices:
        assert {y for y in g.vertices if gr.has_edge(x, y)} == _reach_within(g, x, r)


@settings(max_examples=60)
@given(digraphs(), st.integers(1, 4))
def test_ball_and_power_agree_off_the_centre(g, r):
    gr = power(g, r)
    for v in g.vertices:
        assert ball(g, v, r, "out") - {v} == {w for w in g.vertices if w != v and gr.has_edge(v, w)}
        assert ball(g, v, r, "in") - {v} == {u for u in g.vertices if u != v and gr.has_edge(u, v)}


def test_ball_examples():
    g = dipath(3)
    assert ball(g, 1, 0) == {1}
    assert ball(g, 0, 1, "out") == {0, 1}
    assert ball(g, 2, 5, "in") == {0, 1, 2}


def test_induced_subdigraph_examples():
    g = dicycle(3)
    assert induced_subdigraph(g, {0, 1}).edges == {(0, 1)}
    assert induced_subdigraph(g, set()).n == 0
    assert induced_subdigraph(g, {0, 1, 2}) == g
    with pytest.raises(ValueError):
        induced_subdigraph(g, {5})


def test_induced_subdigraph_relabels_in_order():
    g = Digraph(5, [(4, 1), (1, 3), (3, 3), (0, 2)])
    sub = induced_subdigraph(g, {1, 3, 4})
    assert sub.edges == {(2, 0), (0, 1), (1, 1)}


def test_grid_graph_shape():
    h = grid_graph(3)
    assert h.n == 9 and len(h.sorted_edges()) == 12


def test_masks_round_trip():
    rng = random.Random(0)
    for _ in range(20):
        s = set(rng.sample(range(30), 7))
        assert {i for i in range(30) if mask_of(s) >> i & 1} == s
