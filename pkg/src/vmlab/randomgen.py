"""Seeded random instances shared by the verification suites and tests."""

from __future__ import annotations

import random

from .core import Graph
from .flips import Flip, apply_flip


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(range(n), edges)


def random_flip(rng: random.Random, vertices, k: int, density: float | None = None) -> Flip:
    density = rng.random() if density is None else density
    iota = {v: rng.randint(1, k) for v in vertices}
    pairs = frozenset((i, j) for i in range(1, k + 1) for j in range(i, k + 1)
                      if rng.random() < density)
    return Flip(k, iota, pairs)


def random_independent_set(rng: random.Random, g: Graph, *others: Graph,
                           p: float = 0.5) -> frozenset[int]:
    """Greedy random set independent in ``g`` and in every graph of ``others``."""
    graphs = (g,) + others
    order = list(g.vertices)
    rng.shuffle(order)
    chosen: set[int] = set()
    for v in order:
        if rng.random() >= p:
            continue
        if all(not (h.neighbors(v) & chosen) for h in graphs):
            chosen.add(v)
    return frozenset(chosen)


def random_commute0_instance(rng: random.Random, max_n: int = 12, max_k: int = 4):
    n = rng.randint(1, max_n)
    g = random_graph(rng, n)
    f = random_flip(rng, g.vertices, rng.randint(1, max_k))
    i = random_independent_set(rng, g, apply_flip(g, f))
    return g, f, i


def random_formula(rng: random.Random, free=("x", "y"), depth: int = 3, predicates=("P",),
                   pool=("x", "y", "z", "w")):
    """Random formula of quantifier rank at most ``depth`` whose free variables
    lie in ``free``; atoms use ``E``, equality and the unary ``predicates``."""
    from .logic.syntax import Atom, Binary, Const, Eq, Not, Quant

    def atom(scope):
        v = list(scope)
        roll = rng.random()
        if roll < 0.05:
            return Const(rng.random() < 0.5)
        if roll < 0.25 and predicates:
            return Atom(rng.choice(predicates), (rng.choice(v),))
        if roll < 0.4:
            return Eq(rng.choice(v), rng.choice(v))
        return Atom("E", (rng.choice(v), rng.choice(v)))

    def build(scope, rank, size):
        if size <= 0 or rng.random() < 0.2:
            return atom(scope)
        roll = rng.random()
        if roll < 0.3 and rank > 0:
            var = rng.choice(pool)
            return Quant(rng.choice(("forall", "exists")), var, build(scope | {var}, rank - 1, size - 1))
        if roll < 0.45:
            return Not(build(scope, rank, size - 1))
        op = rng.choice(("&", "|", "->", "<->"))
        return Binary(op, build(scope, rank, size // 2), build(scope, rank, size // 2))

    return build(set(free), depth, 8)
