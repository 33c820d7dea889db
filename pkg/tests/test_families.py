import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from vmlab.core import (complete_graph, cycle_graph, empty_graph, induced_subgraph, is_independent,
                        is_isomorphic, path_graph)
from vmlab.errors import DomainError, ValidationError
from vmlab.families import (IntervalModel, Matching, check_ordered_matching_embedding,
                            comparability_grid, crossing, crossing_vertex, half_graph,
                            half_graph_split_interval, ordered_matching_graph,
                            ordered_matching_vertex, permutation_graph, power_split_interval,
                            random_split_interval_model, split_interval_to_ordered_matching,
                            subdivision)
from vmlab.vminor import local_complement


def test_half_graph():
    assert half_graph(1).edges() == [(0, 1)]
    h = half_graph(2)
    v = h.vertex
    assert sorted(h.edges()) == sorted([(v("a1"), v("b1")), (v("a1"), v("b2")), (v("a2"), v("b2"))])
    h = half_graph(3)
    assert h.size == 6
    assert sorted(h.degree(h.vertex(f"a{i}")) for i in (1, 2, 3)) == [1, 2, 3]
    assert sorted(h.degree(h.vertex(f"b{i}")) for i in (1, 2, 3)) == [1, 2, 3]
    for n in range(1, 8):
        assert half_graph(n).size == n * (n + 1) // 2
    with pytest.raises(DomainError):
        half_graph(0)


def test_permutation_graph():
    assert permutation_graph([1, 2, 3]) == empty_graph([1, 2, 3])
    assert permutation_graph([3, 2, 1]) == complete_graph([1, 2, 3])
    assert permutation_graph([2, 1, 3]).edges() == [(1, 2)]
    with pytest.raises(DomainError):
        permutation_graph([1, 1, 2])
    for sigma in permutations(range(1, 6)):
        inversions = sum(1 for i, j in combinations(range(5), 2) if sigma[i] > sigma[j])
        assert permutation_graph(sigma).size == inversions


def test_comparability_grid():
    assert comparability_grid(1).order == 1
    g = comparability_grid(2)
    assert g.size == 5
    assert not g.adjacent(g.vertex("a1,2"), g.vertex("a2,1"))
    g = comparability_grid(3)
    for i in range(1, 4):
        row = [g.vertex(f"a{i},{j}") for j in range(1, 4)]
        col = [g.vertex(f"a{j},{i}") for j in range(1, 4)]
        assert all(g.adjacent(u, w) for u, w in combinations(row, 2))
        assert all(g.adjacent(u, w) for u, w in combinations(col, 2))


def test_star_crossing_counts_and_p3():
    assert is_isomorphic(crossing("star", 1, 1), path_graph(3))
    g = crossing("star", 1, 1)
    assert g.label(1) == "b1" and g.adjacent(0, 2) and g.adjacent(2, 1)
    for r in range(1, 4):
        for n in range(1, 4):
            g = crossing("star", r, n)
            assert g.order == 2 * n + r * n * n and g.size == (r + 1) * n * n


def test_clique_crossing():
    star, cl = crossing("star", 1, 2), crossing("clique", 1, 2)
    extra = set(cl.edges()) - set(star.edges())
    p = lambda i, j, k: crossing_vertex(2, 1, i, j, k)
    want = {tuple(sorted((p(i, 1, 1), p(i, 2, 1)))) for i in (1, 2)}
    want |= {tuple(sorted((p(1, j, 1), p(2, j, 1)))) for j in (1, 2)}
    assert extra == want and set(star.edges()) <= set(cl.edges())


def test_half_crossing():
    star, hc = crossing("star", 1, 2), crossing("half", 1, 2)
    p = lambda i, j, k: crossing_vertex(2, 1, i, j, k)
    extra = set(hc.edges()) - set(star.edges())
    want = set()
    for i in (1, 2):
        for i2 in (1, 2):
            for j in (1, 2):
                if i2 >= i:
                    want.add(tuple(sorted((p(i, 1, 0), p(i2, j, 1)))))
    for j in (1, 2):
        for i in (1, 2):
            for j2 in (1, 2):
                if j2 >= j:
                    want.add(tuple(sorted((p(1, j, 2), p(i, j2, 1)))))
    assert extra == want - set(star.edges())


def test_flipped_crossing():
    r, n = 1, 2
    tau = [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
    g = crossing("star", r, n, tau)
    base = crossing("star", r, n)
    a = [crossing_vertex(n, r, i, 1, 0) for i in (1, 2)]
    layer1 = [crossing_vertex(n, r, i, j, 1) for i in (1, 2) for j in (1, 2)]
    for u in a:
        for w in layer1:
            assert g.adjacent(u, w) != base.adjacent(u, w)
    with pytest.raises(DomainError):
        crossing("star", 1, 2, [[0]])
    with pytest.raises(DomainError):
        crossing("ring", 1, 2)


def test_ordered_matching():
    g = ordered_matching_graph([(1, 1)])
    assert is_isomorphic(g, path_graph(3)) and g.degree(ordered_matching_vertex(Matching(frozenset({(1, 1)})), (1, 1))) == 2
    fig4 = [(1, 5), (2, 3), (3, 6), (4, 1), (5, 4), (6, 2)]
    g = ordered_matching_graph(fig4)
    assert g.order == 18 and g.size == 42
    n = 6
    assert is_independent(g, range(n)) and is_independent(g, range(n, 2 * n))
    assert is_independent(g, range(2 * n, 3 * n))
    m = Matching(frozenset(fig4))
    v = ordered_matching_vertex(m, (3, 6))
    assert g.neighbors(v) == frozenset({0, 1, 2} | set(range(n, 2 * n)))
    with pytest.raises(DomainError):
        ordered_matching_graph([(1, 1), (2, 1)])


def test_power_split_interval():
    ps = power_split_interval(2)
    g = ps.graph
    assert len(ps.model.points) == 8 and len(ps.model.intervals) == 5
    assert is_independent(g, ps.model.points)
    assert all(g.adjacent(u, v) for u, v in combinations(ps.model.intervals, 2))
    assert g.adjacent(ps.intervals[(1, frozenset({1}))], ps.b[frozenset({1, 2})])
    order = sorted(ps.b, key=lambda j: ps.model.points[ps.b[j]])
    assert order == [frozenset({1, 2}), frozenset({2}), frozenset({1}), frozenset()]
    with pytest.raises(DomainError):
        power_split_interval(1)


def test_subdivision():
    k3 = complete_graph(range(3))
    assert subdivision(k3, 0)[0] == k3
    assert is_isomorphic(subdivision(k3, 1)[0], cycle_graph(6))
    g, smap = subdivision(complete_graph(range(4)), 3)
    assert g.order == 22 and all(len(p) == 3 for p in smap.values())


def test_half_graph_inside_split_interval():
    for n in range(1, 6):
        model, c = half_graph_split_interval(n)
        g = local_complement(model.graph(), c)
        h = half_graph(n)
        mapping = {i - 1: n + i for i in range(1, n + 1)}
        mapping.update({n + j - 1: j - 1 for j in range(1, n + 1)})
        assert induced_subgraph(g, set(g.vertices) - {c}) == h.relabeled(mapping)


def test_interval_model_validation():
    with pytest.raises(ValidationError):
        IntervalModel({0: 0, 1: 0}, {}).validate()
    with pytest.raises(ValidationError):
        IntervalModel({}, {0: (0, 1), 1: (2, 3)}).validate()
    with pytest.raises(ValidationError):
        IntervalModel({0: 1}, {0: (0, 2)}).validate()


def test_om2si_examples():
    model = IntervalModel({0: 0, 1: 3}, {2: (0, 3)})
    e = split_interval_to_ordered_matching(model)
    assert e.matching.n == 1
    check_ordered_matching_embedding(model.graph(), e)
    model = IntervalModel({0: 0, 1: 1, 2: 4, 3: 5}, {4: (0, 5), 5: (1, 4)})
    e = split_interval_to_ordered_matching(model)
    assert e.matching.pairs == frozenset({(1, 1), (2, 2)})
    check_ordered_matching_embedding(model.graph(), e)
    # intervals sharing both extreme points force fresh points
    model = IntervalModel({0: 0, 1: 5}, {2: (0, 5), 3: (0, 5)})
    e = split_interval_to_ordered_matching(model)
    assert e.matching.n >= 2


def test_om2si_random_models():
    rng = random.Random("om2si")
    for _ in range(200):
        model = random_split_interval_model(rng)
        e = split_interval_to_ordered_matching(model)
        check_ordered_matching_embedding(model.graph(), e)


def test_positions_are_exact():
    model = random_split_interval_model(random.Random(3))
    assert all(isinstance(x, Fraction) for x in model.points.values())
