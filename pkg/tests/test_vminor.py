import json
import math
import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from vmlab.core import (Graph, all_pairs_distances, closed_neighborhood, complete_graph,
                        cycle_graph, delete_vertices, empty_graph, is_isomorphic, path_graph)
from vmlab.errors import FaultyComplementation, PreconditionError, ValidationError
from vmlab.families import subdivision
from vmlab.flips import Flip, apply_flip
from vmlab.randomgen import random_graph, random_independent_set
from vmlab.suites import random_svm_flip_instance
from vmlab.vminor import (VMinorWitness, apply_witness, check_pivot_reduction, local_complement,
                          local_complement_set, pivot, reduce_flip_by_pivots, replay_pivots,
                          unsubdivide)

from conftest import graphs


def test_local_complement_examples():
    assert local_complement(complete_graph(range(3)), 0) == Graph(range(3), [(0, 1), (0, 2)])
    assert local_complement(path_graph(3), 1) == complete_graph(range(3))
    star = Graph(range(4), [(0, 1), (0, 2), (0, 3)])
    assert local_complement(star, 0) == complete_graph(range(4))


def test_pivot_examples():
    k2 = complete_graph(range(2))
    assert pivot(k2, 0, 1) == k2
    p3 = path_graph(3)
    out = pivot(p3, 0, 1)
    # pair (c, x) for x outside {a, b} does not exist, so only the u/v swap is visible
    assert out == Graph(range(3), [(0, 1), (0, 2)])
    with pytest.raises(PreconditionError):
        pivot(p3, 0, 2)


def test_pivot_formula_on_external_pairs():
    rng = random.Random("pivot")
    for _ in range(200):
        g = random_graph(rng, rng.randint(2, 9))
        u, v = rng.sample(g.vertices, 2)
        if not g.adjacent(u, v):
            continue
        out = pivot(g, u, v)
        for x in g.vertices:
            for y in g.vertices:
                if x < y and {x, y}.isdisjoint({u, v}):
                    e = g.adjacent(x, y) ^ (g.adjacent(x, u) & g.adjacent(y, v)) \
                        ^ (g.adjacent(x, v) & g.adjacent(y, u))
                    assert out.adjacent(x, y) == e


def test_local_complement_set_examples():
    g = cycle_graph(4)
    assert local_complement_set(g, ()) == g
    assert local_complement_set(g, {0, 2}) == g
    with pytest.raises(FaultyComplementation) as exc:
        local_complement_set(g, {0, 1})
    assert set(exc.value.offending) == {0, 1}


def test_witness_examples():
    k3 = complete_graph(range(3))
    assert apply_witness(k3, VMinorWitness()) == k3
    assert apply_witness(k3, VMinorWitness(({0},))) == local_complement(k3, 0)
    c6 = cycle_graph(6)
    out = apply_witness(c6, VMinorWitness(({1, 3, 5},), {1, 3, 5}))
    assert out == complete_graph([0, 2, 4])


def test_witness_reports_faulty_step():
    g = path_graph(3)
    with pytest.raises(FaultyComplementation) as exc:
        apply_witness(g, VMinorWitness(({1}, {0, 2})))
    assert exc.value.step == 1


def test_witness_json_roundtrip():
    w = VMinorWitness(({1, 3}, {2}), {4})
    assert VMinorWitness.from_json(w.to_json()) == w
    with pytest.raises(ValidationError):
        VMinorWitness.from_json('{"steps": 3}')


@settings(max_examples=100)
@given(graphs(max_n=9, min_n=1), st.data())
def test_lc_involution(g, data):
    v = data.draw(st.sampled_from(g.vertices))
    assert local_complement(local_complement(g, v), v) == g


def test_order_independence():
    rng = random.Random("order")
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 9))
        i = sorted(random_independent_set(rng, g))[:4]
        want = local_complement_set(g, i)
        for order in permutations(i):
            h = g
            for v in order:
                h = local_complement(h, v)
            assert h == want


def test_deletion_commutes_with_complementation():
    rng = random.Random("delete")
    for _ in range(200):
        g = random_graph(rng, rng.randint(2, 9))
        u, v = rng.sample(g.vertices, 2)
        assert local_complement(delete_vertices(g, {u}), v) == delete_vertices(local_complement(g, v), {u})


def test_depth_one_distance_halving():
    rng = random.Random("halving")
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 10), rng.random() * 0.5)
        i = random_independent_set(rng, g)
        d = {v for v in g.vertices if rng.random() < 0.3}
        after = all_pairs_distances(apply_witness(g, VMinorWitness((i,), d)))
        before = all_pairs_distances(g)
        for x in after:
            for y in after:
                assert 2 * after[x][y] >= before[x][y]


def test_unsubdivide_examples():
    k3 = complete_graph(range(3))
    g, smap = subdivision(k3, 0)
    assert unsubdivide(g, smap).depth == 0
    g, smap = subdivision(k3, 1)
    assert is_isomorphic(g, cycle_graph(6))
    w = unsubdivide(g, smap)
    assert w.depth == 1 and apply_witness(g, w) == k3
    k4 = complete_graph(range(4))
    g, smap = subdivision(k4, 3)
    w = unsubdivide(g, smap)
    assert g.order == 22 and w.depth == 2 and apply_witness(g, w) == k4


@pytest.mark.parametrize("r", range(8))
def test_unsubdivide_depth(r):
    rng = random.Random(f"unsub{r}")
    for _ in range(10):
        h = random_graph(rng, rng.randint(2, 6))
        g, smap = subdivision(h, r)
        w = unsubdivide(g, smap)
        assert w.depth == (math.ceil(math.log2(r + 1)) if h.size else 0)
        assert apply_witness(g, w) == h


def test_unsubdivide_rejects_bad_maps():
    g, smap = subdivision(path_graph(3), 2)
    bad = dict(smap)
    bad[(0, 1)] = list(reversed(bad[(0, 1)]))
    with pytest.raises(ValidationError):
        unsubdivide(g, bad)
    bad = dict(smap)
    del bad[(1, 2)]
    with pytest.raises(ValidationError):
        unsubdivide(g, bad)


def test_reduce_flip_examples():
    g = Graph(range(4), [(0, 1), (2, 3)])
    zero = Flip(1, {v: 1 for v in g.vertices}, frozenset())
    assert reduce_flip_by_pivots(g, zero, {0}) == []
    selfish = Flip(1, {v: 1 for v in g.vertices}, frozenset({(1, 1)}))
    seq = reduce_flip_by_pivots(g, selfish, {0})
    assert seq == [0]
    check_pivot_reduction(g, selfish, {0}, seq)
    g = empty_graph(range(5))
    cross = Flip(2, {0: 1, 1: 2, 2: 1, 3: 2, 4: 1}, frozenset({(1, 2)}))
    seq = reduce_flip_by_pivots(g, cross, {0, 1})
    assert seq == [0, 1, 0]
    n = closed_neighborhood(g, {0, 1})
    assert delete_vertices(replay_pivots(g, cross, seq), n) == delete_vertices(g, n)


def test_reduce_flip_preconditions():
    g = Graph(range(3), [(0, 1)])
    f = Flip(2, {0: 1, 1: 2, 2: 2}, frozenset({(1, 2)}))
    with pytest.raises(PreconditionError):
        reduce_flip_by_pivots(g, f, {0, 1})
    with pytest.raises(PreconditionError):
        reduce_flip_by_pivots(g, f, {0})
    with pytest.raises(PreconditionError):
        reduce_flip_by_pivots(g, f, {1, 2})


def test_reduce_flip_bounds_random():
    rng = random.Random("svm")
    for _ in range(200):
        g, f, i = random_svm_flip_instance(rng)
        seq = reduce_flip_by_pivots(g, f, i)
        assert len(seq) <= 3 * f.k // 2
        assert all(seq.count(z) <= 2 for z in seq)
        check_pivot_reduction(g, f, i, seq)
