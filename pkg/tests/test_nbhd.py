import random
from itertools import combinations

import pytest

from bimim.cuts import cut_values
from bimim.digraph import Digraph, bits, mask_of
from bimim.nbhd import combine_descriptions, describe, enumerate_classes, q_enumerate_classes
from bimim.oracle import brute_bimim, brute_nec

from _util import random_digraph


def _subsets(vs):
    for k in range(len(vs) + 1):
        yield from combinations(vs, k)


def test_describe_empty_is_zero():
    g = Digraph(3, [(0, 1), (1, 2)])
    dsc = describe(g, {0, 1}, 2, set())
    assert dsc.out_vec == (0,) and dsc.in_vec == (0,)


def test_describe_single_edge():
    g = Digraph(2, [(0, 1)])
    dsc = describe(g, {0}, 1, {0})
    assert dsc.out_of(1) == 1 and dsc.in_of(1) == 0


def test_describe_caps():
    g = Digraph(4, [(0, 3), (1, 3), (2, 3)])
    assert describe(g, {0, 1, 2}, 1, {0, 1, 2}).out_of(3) == 1
    assert describe(g, {0, 1, 2}, 2, {0, 1, 2}).out_of(3) == 2


def test_describe_rejects_outside_subset():
    with pytest.raises(ValueError):
        describe(Digraph(2), {0}, 1, {1})


def test_enumerate_single_vertex():
    g = Digraph(2, [(0, 1)])
    assert len(enumerate_classes(g, {0}, 1)) == 2


def test_enumerate_isolated_side():
    g = Digraph(4, [(0, 1), (2, 3)])
    assert len(enumerate_classes(g, {0, 1}, 3)) == 1


def test_enumerate_d_zero():
    g = Digraph(3, [(0, 1), (1, 2), (2, 0)])
    assert len(enumerate_classes(g, {0}, 0)) == 1


def test_enumerate_matches_exhaustive():
    rng = random.Random(1)
    for _ in range(60):
        g = random_digraph(rng, 8)
        a = {v for v in range(8) if rng.random() < 0.5}
        d = rng.choice((1, 2, 3))
        idx = enumerate_classes(g, a, d)
        brute = {describe(g, a, d, set(x)) for x in _subsets(sorted(a))}
        assert len(idx) == len(brute) == brute_nec(g, a, d)
        assert {dsc for dsc, _ in idx.items()} == brute


def test_witnesses_are_sound_and_insertions_match():
    rng = random.Random(2)
    for _ in range(40):
        n = rng.randint(2, 10)
        g = random_digraph(rng, n)
        a = mask_of(v for v in range(n) if rng.random() < 0.5)
        idx = enumerate_classes(g, a, 2)
        assert idx.insertions == len(idx)
        for dsc, w in idx.items():
            assert w & ~a == 0
            assert describe(g, a, 2, w) == dsc


def test_completeness_up_to_twelve():
    rng = random.Random(3)
    for _ in range(5):
        g = random_digraph(rng, 14, p=0.2)
        a = mask_of(rng.sample(range(14), 12))
        idx = enumerate_classes(g, a, 1)
        for x in _subsets(bits(a)):
            idx.index_of(mask_of(x))


def _equivalent(g, a, d, x, y):
    for u in range(g.n):
        if a >> u & 1:
            continue
        preds = [w for w in range(g.n) if g.has_edge(w, u)]
        succs = [w for w in range(g.n) if g.has_edge(u, w)]
        for nb in (preds, succs):
            if min(d, sum(w in x for w in nb)) != min(d, sum(w in y for w in nb)):
                return False
    return True


def test_equivalence_iff_equal_description():
    rng = random.Random(4)
    for _ in range(30):
        n = rng.randint(2, 7)
        g = random_digraph(rng, n)
        a = mask_of(v for v in range(n) if rng.random() < 0.6)
        subs = [set(x) for x in _subsets(bits(a))]
        for _ in range(20):
            x, y = rng.choice(subs), rng.choice(subs)
            same = describe(g, a, 1, x) == describe(g, a, 1, y)
            assert same == _equivalent(g, a, 1, x, y)


def test_combine_examples():
    g = Digraph(3, [(0, 2), (1, 2)])
    da, db = describe(g, {0}, 1, set()), describe(g, {1}, 1, set())
    assert combine_descriptions(da, db).out_vec == (0,)
    da, db = describe(g, {0}, 1, {0}), describe(g, {1}, 1, {1})
    assert combine_descriptions(da, db).out_vec == (1,)
    with pytest.raises(ValueError, match="cap"):
        combine_descriptions(describe(g, {0}, 1, set()), describe(g, {1}, 2, set()))
    with pytest.raises(ValueError, match="overlap"):
        combine_descriptions(describe(g, {0}, 1, set()), describe(g, {0, 1}, 1, set()))


def test_combine_equals_union_description():
    rng = random.Random(5)
    for _ in range(80):
        n = rng.randint(3, 9)
        g = random_digraph(rng, n)
        side = [rng.randrange(3) for _ in range(n)]
        a = {v for v in range(n) if side[v] == 0}
        b = {v for v in range(n) if side[v] == 1}
        x = {v for v in a if rng.random() < 0.5}
        y = {v for v in b if rng.random() < 0.5}
        d = rng.choice((1, 2))
        assert combine_descriptions(describe(g, a, d, x), describe(g, b, d, y)) == describe(g, a | b, d, x | y)


def test_q_product_counts():
    g = Digraph(2, [(0, 1)])
    q1 = q_enumerate_classes(g, {0}, 1, 1)
    assert len(q1) == len(enumerate_classes(g, {0}, 1)) == 2
    assert len(q_enumerate_classes(g, {0}, 1, 2)) == 4
    rng = random.Random(6)
    g = random_digraph(rng, 6)
    base = len(enumerate_classes(g, {0, 1, 2}, 1))
    q2 = q_enumerate_classes(g, {0, 1, 2}, 1, 2)
    assert len(q2) == base**2 == len(list(q2.items()))
    for k in range(len(q2)):
        assert q2.index_of_tuple(q2.tuple_of(k)) == k


def test_nec_bound_small_cuts():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(2, 12)
        g = random_digraph(rng, n, p=0.2)
        a = {v for v in range(n) if rng.random() < 0.5}
        w = brute_bimim(g, a)
        assert w == cut_values(g, a).bimim
        if w > 3:
            continue
        for d in (1, 2):
            assert len(enumerate_classes(g, a, d)) <= n ** (d * w)
