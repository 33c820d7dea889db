import random

import pytest

from vmlab.core import complete_graph, cycle_graph, empty_graph, induced_subgraph, is_isomorphic, path_graph
from vmlab.errors import CapacityError
from vmlab.families import half_graph, half_graph_split_interval
from vmlab.randomgen import random_graph
from vmlab.search import (check_containment, find_induced_embedding, flip_break_max,
                          flip_scatter_max, independent_sets, is_depth_r_vminor, planted_instance)
from vmlab.vminor import apply_witness

# exhaustive value for P6, a = V, r = 2, k = 1, frozen as a regression constant
P6_BREAK = 2


def test_independent_sets_order():
    sets = list(independent_sets(path_graph(4)))
    assert sets[:4] == [frozenset({v}) for v in range(4)]
    assert sets[4:] == [frozenset(s) for s in ({0, 2}, {0, 3}, {1, 3})]


def test_find_induced_embedding():
    assert find_induced_embedding(path_graph(3), cycle_graph(5)) is not None
    assert find_induced_embedding(complete_graph(range(3)), cycle_graph(5)) is None
    m = find_induced_embedding(path_graph(3), path_graph(5))
    assert induced_subgraph(path_graph(5), m.values()).relabeled({w: v for v, w in m.items()}) == path_graph(3)


def test_containment_examples():
    g = random_graph(random.Random(1), 7)
    res = is_depth_r_vminor(g, g, 2)
    assert res.found and res.witness.depth == 0 and not res.witness.deletions
    res = is_depth_r_vminor(cycle_graph(6), cycle_graph(3), 1)
    assert res.found and res.witness.depth == 1
    assert is_isomorphic(apply_witness(cycle_graph(6), res.witness), cycle_graph(3))
    check_containment(cycle_graph(6), cycle_graph(3), res)


def test_containment_negative_and_caps():
    res = is_depth_r_vminor(complete_graph(range(3)), empty_graph(range(3)), 3)
    assert not res.found and res.stats.nodes > 0
    with pytest.raises(CapacityError):
        is_depth_r_vminor(empty_graph(range(11)), empty_graph(range(1)), 1)
    with pytest.raises(CapacityError):
        is_depth_r_vminor(path_graph(3), path_graph(2), 4)
    assert is_depth_r_vminor(empty_graph(range(11)), empty_graph(range(2)), 0, cap_n=12).found


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_half_graph_from_split_interval(n):
    model, c = half_graph_split_interval(n)
    g = model.graph()
    res = is_depth_r_vminor(g, half_graph(n), 1)
    assert res.found and res.witness.depth == (0 if n == 1 else 1)
    check_containment(g, half_graph(n), res)


def test_planted_and_monotone():
    for t in range(60):
        g, h, w = planted_instance(random.Random(f"planted:{t}"))
        res = is_depth_r_vminor(g, h, w.depth)
        assert res.found and res.witness.depth <= w.depth
        check_containment(g, h, res)
        if w.depth < 3:
            assert is_depth_r_vminor(g, h, w.depth + 1).found


def test_flip_scatter_examples():
    rng = random.Random("scatter")
    g = random_graph(rng, 6)
    assert flip_scatter_max(g, g.vertices, 1, 1) == 6
    assert flip_scatter_max(empty_graph(range(5)), range(5), 4, 1) == 5
    for n in range(1, 7):
        assert flip_scatter_max(complete_graph(range(n)), range(n), 3, 1) == n


def test_flip_break_examples():
    assert flip_break_max(empty_graph(range(2)), range(2), 3, 1) == 1
    assert flip_break_max(empty_graph(range(5)), range(5), 0, 1) == 2
    assert flip_break_max(path_graph(6), range(6), 2, 1) == P6_BREAK


def test_flip_caps():
    with pytest.raises(CapacityError):
        flip_scatter_max(empty_graph(range(9)), range(9), 1, 1)
    with pytest.raises(CapacityError):
        flip_break_max(path_graph(3), range(3), 1, 3)


def test_flip_maxima_monotone():
    rng = random.Random("mono")
    for _ in range(8):
        g = random_graph(rng, rng.randint(2, 5))
        a = g.vertices
        for fn in (flip_scatter_max, flip_break_max):
            for k in (1, 2):
                vals = [fn(g, a, r, k) for r in range(0, 4)]
                assert vals == sorted(vals, reverse=True)
            for r in range(0, 4):
                assert fn(g, a, r, 1) <= fn(g, a, r, 2)


def test_result_json():
    res = is_depth_r_vminor(cycle_graph(6), cycle_graph(3), 1)
    data = res.to_json()
    assert data["found"] and data["witness"]["steps"] and set(data["stats"]) == {"nodes", "dedup_hits", "embedding_tests"}
