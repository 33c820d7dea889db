"""Finite-model semantics for :mod:`vmlab.logic.syntax` formulas."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..core import Graph
from ..errors import CapacityError, EvaluationError
from .syntax import Atom, Binary, Const, Definition, Eq, Formula, Not, Quant, quantifier_rank

MAX_DOMAIN = 32
MAX_RANK = 5


@dataclass(frozen=True)
class Model:
    """Domain, binary relations as sets of ordered pairs, unary predicates."""

    domain: tuple
    relations: Mapping[str, frozenset] = field(default_factory=dict)
    predicates: Mapping[str, frozenset] = field(default_factory=dict)


def graph_model(g: Graph, predicates: Mapping[str, object] | None = None) -> Model:
    pairs = set()
    for u, v in g.edges():
        pairs.add((u, v))
        pairs.add((v, u))
    preds = {k: frozenset(v) for k, v in (predicates or {}).items()}
    return Model(tuple(g.vertices), {"E": frozenset(pairs)}, preds)


def as_model(s, predicates=None) -> Model:
    if isinstance(s, Model):
        if predicates:
            merged = dict(s.predicates)
            merged.update({k: frozenset(v) for k, v in predicates.items()})
            return Model(s.domain, s.relations, merged)
        return s
    if isinstance(s, Graph):
        return graph_model(s, predicates)
    if hasattr(s, "to_model"):
        return as_model(s.to_model(), predicates)
    raise TypeError(f"cannot evaluate formulas on {type(s).__name__}")


class Evaluator:
    """Memoizing evaluator bound to one model; results are cached per
    (subformula, values of its free variables) across calls."""

    def __init__(self, model, definitions: Mapping[str, Definition] | None = None,
                 max_domain: int = MAX_DOMAIN, max_rank: int = MAX_RANK):
        self.model = as_model(model)
        self.defs = dict(definitions or {})
        self.max_rank = max_rank
        if len(self.model.domain) > max_domain:
            raise CapacityError(f"domain of size {len(self.model.domain)} exceeds cap {max_domain}")
        self._memo: dict = {}
        self._free: dict = {}

    def check_rank(self, f: Formula) -> None:
        rank = quantifier_rank(f, self.defs)
        if rank > self.max_rank:
            raise CapacityError(f"quantifier rank {rank} exceeds cap {self.max_rank}")

    def holds(self, f: Formula, assignment: Mapping[str, object]) -> bool:
        self.check_rank(f)
        missing = self.free(f) - set(assignment)
        if missing:
            raise EvaluationError(f"free variable(s) {sorted(missing)} are not assigned")
        return self._eval(f, assignment)

    def free(self, f: Formula) -> frozenset:
        got = self._free.get(f)
        if got is None:
            got = self._free[f] = f.free()
        return got

    def _eval(self, f, env):
        key = (f, tuple(sorted((v, env[v]) for v in self.free(f))))
        got = self._memo.get(key)
        if got is None:
            got = self._memo[key] = self._compute(f, env)
        return got

    def _compute(self, f, env):
        if isinstance(f, Const):
            return f.value
        if isinstance(f, Eq):
            return env[f.left] == env[f.right]
        if isinstance(f, Atom):
            return self._atom(f, env)
        if isinstance(f, Not):
            return not self._eval(f.body, env)
        if isinstance(f, Binary):
            a = self._eval(f.left, env)
            if f.op == "&":
                return a and self._eval(f.right, env)
            if f.op == "|":
                return a or self._eval(f.right, env)
            if f.op == "->":
                return (not a) or self._eval(f.right, env)
            return a == self._eval(f.right, env)
        if isinstance(f, Quant):
            inner = dict(env)
            want = f.kind == "exists"
            for x in self.model.domain:
                inner[f.var] = x
                if self._eval(f.body, inner) == want:
                    return want
            return not want
        raise TypeError(f"not a formula: {f!r}")

    def _atom(self, f, env):
        vals = tuple(env[a] for a in f.args)
        d = self.defs.get(f.name)
        if d is not None:
            return self._eval(d.body, dict(zip(d.params, vals)))
        if len(vals) == 2 and f.name in self.model.relations:
            return vals in self.model.relations[f.name]
        if len(vals) == 1 and f.name in self.model.predicates:
            return vals[0] in self.model.predicates[f.name]
        raise EvaluationError(f"symbol {f.name}/{len(vals)} is not interpreted in the model")


def evaluate(s, phi: Formula, assignment: Mapping[str, object],
             definitions: Mapping[str, Definition] | None = None, predicates=None) -> bool:
    return Evaluator(as_model(s, predicates), definitions).holds(phi, assignment)


def evaluate_reference(s, phi: Formula, assignment: Mapping[str, object],
                       definitions: Mapping[str, Definition] | None = None) -> bool:
    """Direct recursive semantics without caching or caps."""
    m = as_model(s)
    defs = definitions or {}

    def ev(f, env):
        if isinstance(f, Const):
            return f.value
        if isinstance(f, Eq):
            return env[f.left] == env[f.right]
        if isinstance(f, Atom):
            vals = [env[a] for a in f.args]
            if f.name in defs:
                d = defs[f.name]
                return ev(d.body, dict(zip(d.params, vals)))
            if len(vals) == 2:
                return tuple(vals) in m.relations[f.name]
            return vals[0] in m.predicates[f.name]
        if isinstance(f, Not):
            return not ev(f.body, env)
        if isinstance(f, Binary):
            a, b = ev(f.left, env), ev(f.right, env)
            return {"&": a and b, "|": a or b, "->": (not a) or b, "<->": a == b}[f.op]
        if isinstance(f, Quant):
            results = (ev(f.body, {**env, f.var: x}) for x in m.domain)
            return any(results) if f.kind == "exists" else all(results)
        raise TypeError(f"not a formula: {f!r}")

    missing = phi.free() - set(assignment)
    if missing:
        raise EvaluationError(f"free variable(s) {sorted(missing)} are not assigned")
    return ev(phi, dict(assignment))
