import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from vmlab.core import Graph, complete_graph, empty_graph
from vmlab.errors import CapacityError, EvaluationError, FormulaSyntaxError, PreconditionError
from vmlab.families import half_graph, power_split_interval
from vmlab.logic import (Atom, Binary, Eq, Evaluator, Model, Not, Quant, Signature,
                         definition_text, evaluate, evaluate_reference, independence_witness,
                         ladder, ladder_index, load_formulas, parse_definitions, parse_formula,
                         permutation_orders, permutation_roundtrip, quantifier_rank, to_text)
from vmlab.randomgen import random_formula, random_graph

E = Atom("E", ("x", "y"))
SIG = Signature({"E"}, {"P", "Q"})


def test_parse_atom_and_scoped_formula():
    assert parse_formula("E(x,y)") == E
    defs = load_formulas("split_interval")
    sig = Signature({"E"}, set(), dict(defs))
    f = parse_formula("forall z (nu(z) -> ~E(x,z))", sig, free={"x"})
    assert f.free() == {"x"}
    assert isinstance(f, Quant) and f.var == "z"


def test_precedence():
    f = parse_formula("P(x) | Q(x) & ~P(y) -> Q(y) <-> P(x)", SIG)
    p, q = (lambda v: Atom("P", (v,))), (lambda v: Atom("Q", (v,)))
    want = Binary("<->", Binary("->", Binary("|", p("x"), Binary("&", q("x"), Not(p("y")))), q("y")), p("x"))
    assert f == want
    assert parse_formula("P(x) -> P(y) -> Q(x)", SIG) == \
        Binary("->", p("x"), Binary("->", p("y"), q("x")))
    assert parse_formula("P(x) <-> P(y) <-> Q(x)", SIG) == \
        Binary("<->", Binary("<->", p("x"), p("y")), q("x"))


def test_quantifier_scope_and_multiple_variables():
    f = parse_formula("exists x y E(x, y) & x = y")
    assert f == Quant("exists", "x", Quant("exists", "y", Binary("&", E, Eq("x", "y"))))
    assert parse_formula("x != y") == Not(Eq("x", "y"))


@pytest.mark.parametrize("text", ["E(x", "E(x,y) &", "forall", "E(x,y,z)", "F(x,y)", "x", "(E(x,y)",
                                  "E(x,y) E(y,x)", "", "E(x,y) $ E(y,x)", "forall E(x,y)"])
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse_formula(text)


def test_error_positions():
    with pytest.raises(FormulaSyntaxError) as exc:
        parse_formula("E(x,y) & F(x)")
    assert exc.value.position == 9
    with pytest.raises(FormulaSyntaxError) as exc:
        parse_formula("E(x, q)", free={"x"})
    assert exc.value.position == 5


def test_definitions_file_errors():
    with pytest.raises(FormulaSyntaxError):
        parse_definitions("junk\nf(x) := E(x, x)")
    with pytest.raises(FormulaSyntaxError) as exc:
        parse_definitions("f(x) := E(x, y)")
    assert "in definition f" in str(exc.value)


def test_printer_roundtrip_on_library():
    for name, preds in (("split_interval", ()), ("permutation", ("A", "B"))):
        defs = load_formulas(name, preds)
        sig = Signature({"E"}, set(preds))
        again = parse_definitions("\n".join(definition_text(d) for d in defs.values()), sig)
        assert again == defs


@settings(max_examples=300)
@given(st.integers(0, 10 ** 9))
def test_printer_roundtrip_random(seed):
    f = random_formula(random.Random(seed), predicates=("P", "Q"))
    assert parse_formula(to_text(f), SIG) == f


def test_quantifier_rank():
    defs = load_formulas("split_interval")
    assert quantifier_rank(Atom("phi", ("x", "y")), defs) == 5
    assert quantifier_rank(parse_formula("exists x forall y E(x, y) | exists z z = z")) == 3
    assert quantifier_rank(parse_formula("(exists x forall y E(x, y)) | exists z z = z")) == 2


def test_evaluate_examples():
    k2 = complete_graph(range(2))
    assert evaluate(k2, E, {"x": 0, "y": 1})
    assert evaluate(empty_graph(range(3)), parse_formula("exists x x = x"), {})
    with pytest.raises(EvaluationError):
        evaluate(k2, E, {"x": 0})
    ps = power_split_interval(2)
    defs = load_formulas("split_interval")
    phi = Atom("phi", ("x", "y"))
    assert evaluate(ps.graph, phi, {"x": ps.a[1], "y": ps.b[frozenset({1})]}, defs)
    assert not evaluate(ps.graph, phi, {"x": ps.a[2], "y": ps.b[frozenset({1})]}, defs)


def test_evaluator_caps():
    with pytest.raises(CapacityError):
        Evaluator(empty_graph(range(33)))
    deep = parse_formula("exists a b c d e f E(a, b)")
    with pytest.raises(CapacityError):
        evaluate(empty_graph(range(2)), deep, {})


def test_evaluator_matches_reference():
    rng = random.Random("evalref")
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 6))
        preds = {"P": {v for v in g.vertices if rng.random() < 0.5}}
        f = random_formula(rng)
        env = {"x": rng.choice(g.vertices), "y": rng.choice(g.vertices)}
        m = Model(g.vertices, {"E": frozenset(p for u, v in g.edges() for p in ((u, v), (v, u)))},
                  {k: frozenset(v) for k, v in preds.items()})
        assert evaluate(m, f, env) == evaluate_reference(m, f, env)


def test_split_interval_formulas():
    defs = load_formulas("split_interval")
    for n in (2, 3):
        ps = power_split_interval(n)
        ev = Evaluator(ps.graph, defs)
        nu = {v for v in ps.graph.vertices if ev.holds(Atom("nu", ("x",)), {"x": v})}
        eta = {v for v in ps.graph.vertices if ev.holds(Atom("eta", ("x",)), {"x": v})}
        assert nu == set(ps.a.values()) | set(ps.a_prime.values())
        assert eta == set(ps.b.values())
        for i, a in ps.a.items():
            for j, b in ps.b.items():
                assert ev.holds(Atom("phi", ("x", "y")), {"x": a, "y": b}) == (i in j)


def test_ladder_examples():
    assert ladder_index(empty_graph(range(4)), E, 3) == 0
    h = half_graph(3)
    lad = ladder(h, E, 3)
    assert len(lad) == 3
    assert lad == [(h.vertex(f"a{i}"), h.vertex(f"b{i}")) for i in (1, 2, 3)]
    for n in range(1, 6):
        assert ladder_index(half_graph(n), E, n) == n


def test_ladder_on_triangle_depends_on_side_overlap():
    """a- and b-sides may share elements by default; requiring them to be
    disjoint gives the smaller value."""
    k3 = complete_graph(range(3))
    assert ladder_index(k3, E, 2) == 2
    assert ladder_index(k3, E, 2, disjoint=True) == 1


def test_ladder_cap_and_monotonicity():
    with pytest.raises(CapacityError):
        ladder_index(half_graph(2), E, 9)
    rng = random.Random("ladder")
    for _ in range(20):
        g = random_graph(rng, rng.randint(1, 7))
        vals = [ladder_index(g, E, c) for c in range(0, 5)]
        assert vals == sorted(vals)
        perm = list(g.vertices)
        rng.shuffle(perm)
        assert ladder_index(g.relabeled(dict(zip(g.vertices, perm))), E, 4) == vals[4]


def test_ladder_rejects_stray_free_variables():
    with pytest.raises(PreconditionError):
        ladder(half_graph(2), Atom("E", ("x", "z")), 2)


def test_independence_examples():
    ps = power_split_interval(2)
    defs = load_formulas("split_interval")
    w = independence_witness(ps.graph, Atom("phi", ("x", "y")), 2, defs, disjoint=True)
    assert w is not None
    a, b = w
    ev = Evaluator(ps.graph, defs)
    for j, bj in b.items():
        for i, ai in enumerate(a, start=1):
            assert ev.holds(Atom("phi", ("x", "y")), {"x": ai, "y": bj}) == (i in j)
    assert independence_witness(empty_graph(range(3)), E, 1) is None
    assert independence_witness(half_graph(4), E, 2) is None
    with pytest.raises(CapacityError):
        independence_witness(half_graph(2), E, 4)


def test_permutation_transduction():
    assert permutation_roundtrip([1, 2])
    for n in (3, 4):
        for sigma in permutations(range(1, n + 1)):
            assert permutation_roundtrip(sigma)
    first, second = permutation_orders([2, 1])
    assert first == [2, 4] and second == [4, 2]
