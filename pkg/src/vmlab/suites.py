"""Randomized verification suites behind ``vmlab verify``.

Trial ``t`` of a suite run with seed ``s`` draws from
``random.Random(f"{suite}:{s}:{t}")``, so any single failure can be replayed
from the report without rerunning the others.
"""

from __future__ import annotations

import json
import math
import os
import random
from dataclasses import dataclass, field
from itertools import permutations

from .commute import (commute0, commute0_bound, commute0b, commute0b_gap, commute0b_report,
                      commute_corollary_bwd, commute_corollary_fwd, commute_general, spread_flip)
from .core import Graph, all_pairs_distances, delete_vertices
from .errors import VmlabError
from .families import (IntervalModel, power_split_interval, random_split_interval_model,
                       split_interval_to_ordered_matching, subdivision)
from .flips import Flip, apply_flip, clean_flip, flip_classes_of, is_homogeneous, minimum_flip
from .logic import Atom, Evaluator, load_formulas, permutation_roundtrip
from .randomgen import random_commute0_instance, random_flip, random_graph, random_independent_set
from .search import is_depth_r_vminor
from .structures import random_structure, roundtrip
from .vminor import (VMinorWitness, apply_witness, check_pivot_reduction, local_complement,
                     local_complement_set, pivot, reduce_flip_by_pivots, unsubdivide)


@dataclass
class Bound:
    """Largest claimed and observed values over all trials; a violation is a
    trial whose own observation exceeds its own claim."""

    claimed: float
    observed: float = 0
    violations: int = 0


@dataclass
class VerificationReport:
    suite: str
    seed: int
    trials: int
    params: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)
    checks: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures and not any(b.violations for b in self.bounds.values())

    def observe(self, name: str, claimed, observed, instance=None, trial=None):
        b = self.bounds.setdefault(name, Bound(claimed))
        b.claimed = max(b.claimed, claimed)
        b.observed = max(b.observed, observed)
        if observed > claimed:
            b.violations += 1
            self.failures.append({"trial": trial, "kind": "bound", "check": name,
                                  "claimed": claimed, "observed": observed, "instance": instance})

    def fail(self, trial, check, instance, detail=""):
        self.failures.append({"trial": trial, "kind": "check", "check": check,
                              "detail": detail, "instance": instance})

    def to_dict(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "trials": self.trials,
                "params": self.params, "checks": self.checks, "ok": self.ok,
                "failures": self.failures,
                "bounds": {k: vars(b) for k, b in self.bounds.items()}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, default=str)

    def summary(self) -> str:
        lines = [f"suite {self.suite} seed {self.seed} trials {self.trials}: "
                 f"{self.checks} checks, {len(self.failures)} failures"]
        for name, b in self.bounds.items():
            lines.append(f"  bound {name}: max claimed {b.claimed}, max observed {b.observed}, "
                         f"violations {b.violations}")
        for f in self.failures[:10]:
            lines.append(f"  FAIL trial {f['trial']}: {f['check']} {f.get('detail', '')}".rstrip())
        if len(self.failures) > 10:
            lines.append(f"  ... {len(self.failures) - 10} more")
        return "\n".join(lines)


def _inst(g: Graph | None = None, f: Flip | None = None, **sets) -> dict:
    out = {}
    if g is not None:
        out["graph"] = g.to_text()
    if f is not None:
        out["flip"] = f.to_text()
    for k, v in sets.items():
        out[k] = sorted(v) if isinstance(v, (set, frozenset)) else v
    return out


def _check(rep, t, name, cond, inst, detail=""):
    rep.checks += 1
    if not cond:
        rep.fail(t, name, inst, detail)


def _flip_involution(rep, rng, t, p):
    n = rng.randint(1, 12)
    g = random_graph(rng, n)
    f = random_flip(rng, g.vertices, rng.randint(1, 4))
    _check(rep, t, "involution", apply_flip(apply_flip(g, f), f) == g, _inst(g, f))


def _lc_involution(rep, rng, t, p):
    g = random_graph(rng, rng.randint(1, 10))
    v = rng.choice(g.vertices)
    _check(rep, t, "g*v*v = g", local_complement(local_complement(g, v), v) == g, _inst(g, v=v))
    i = sorted(random_independent_set(rng, g))[:4]
    target = local_complement_set(g, i)
    for order in permutations(i):
        h = g
        for u in order:
            h = local_complement(h, u)
        _check(rep, t, "order independence", h == target, _inst(g, i=i, order=list(order)))


def _pivot(rep, rng, t, p):
    n = rng.randint(2, 10)
    g = random_graph(rng, n)
    u, v = rng.sample(g.vertices, 2)
    if not g.adjacent(u, v):
        g = Graph(g.vertices, g.edges() + [(min(u, v), max(u, v))])
    a = pivot(g, u, v)
    b = local_complement(local_complement(local_complement(g, v), u), v)
    _check(rep, t, "g*u*v*u = g*v*u*v", a == b, _inst(g, u=u, v=v))
    ok = True
    for x in g.vertices:
        for y in g.vertices:
            if x < y and {x, y}.isdisjoint({u, v}):
                e = (g.adjacent(x, y) + g.adjacent(x, u) * g.adjacent(y, v)
                     + g.adjacent(x, v) * g.adjacent(y, u)) % 2
                ok &= a.adjacent(x, y) == bool(e)
    _check(rep, t, "pivot formula on external pairs", ok, _inst(g, u=u, v=v))


def _commute0(rep, rng, t, p):
    g, f, i = random_commute0_instance(rng, p.get("n", 12), p.get("k", 4))
    inst = _inst(g, f, i=i)
    f2 = commute0(g, f, i)
    gi, target = local_complement_set(g, i), local_complement_set(apply_flip(g, f), i)
    _check(rep, t, "G*I + F' = (G + F)*I", apply_flip(gi, f2) == target, inst)
    rep.observe("classes <= k 2^k", commute0_bound(f.k), len(f2.occupied()), inst, t)
    # separates a weak construction from an impossible bound
    rep.observe("fewest possible classes <= k 2^k", commute0_bound(f.k), minimum_flip(gi, target).k, inst, t)


def random_commute0b_instance(rng, max_n: int = 10, max_k: int = 3):
    """``(g, f, i, j)`` with ``i`` F-homogeneous (built by planting a
    homogeneous table on ``i``) and ``j`` inside one class of ``i``,
    independent in ``g`` and ``g + f``."""
    while True:
        n = rng.randint(1, max_n)
        k = rng.randint(1, max_k)
        f = random_flip(rng, range(n), k)
        size = rng.randint(1, n)
        i = set(rng.sample(range(n), size))
        table = {(a, b): rng.randint(0, 1) for a in range(1, k + 1) for b in range(a, k + 1)}
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if u in i and v in i:
                    a, b = sorted((f.cls(u), f.cls(v)))
                    e = table[a, b]
                else:
                    e = rng.random() < 0.5
                if e:
                    edges.append((u, v))
        g = Graph(range(n), edges)
        cls = rng.choice(flip_classes_of(f, i))
        gf = apply_flip(g, f)
        c = next(iter(cls))
        if table[f.cls(c), f.cls(c)] or f.t(f.cls(c), f.cls(c)) ^ table[f.cls(c), f.cls(c)]:
            j = {rng.choice(sorted(cls))}
        else:
            j = set(rng.sample(sorted(cls), rng.randint(1, len(cls))))
        if all(not gf.adjacent(a, b) for a in j for b in j if a != b) and is_homogeneous(g, f, i):
            return g, f, frozenset(i), frozenset(j)


def _commute0b(rep, rng, t, p):
    g, f, i, j = random_commute0b_instance(rng)
    inst = _inst(g, f, i=i, j=j)
    try:
        f2 = commute0b(g, f, i, j)
    except VmlabError as exc:
        rep.checks += 1
        rep.fail(t, "commute0b raised", inst, str(exc))
        return
    report = commute0b_report(g, f, i, j, f2)
    for name, ok in report.items():
        detail = "inside the characterized gap" if name == "i_compatible" and commute0b_gap(g, f, i, j) else ""
        _check(rep, t, name, ok, inst, detail)


def _commute(rep, rng, t, p):
    n = rng.randint(1, 10)
    g = random_graph(rng, n)
    f = random_flip(rng, g.vertices, rng.randint(1, 3))
    i = random_independent_set(rng, g)
    inst = _inst(g, f, i=i)
    k_i = len(flip_classes_of(f, i))
    try:
        r = commute_general(g, f, i)
        _check(rep, t, "general: G*I + F' = (G + F)*J_1..*J_p",
               apply_flip(local_complement_set(g, i), r.flip)
               == apply_witness(apply_flip(g, f), VMinorWitness(r.partition)), inst)
        _check(rep, t, "general: partition of I",
               sorted(v for part in r.partition for v in part) == sorted(i), inst)
        rep.observe("general: parts <= 2k", 2 * k_i, len(r.partition), inst, t)
        i2 = random_independent_set(rng, apply_flip(g, f))
        r = commute_corollary_fwd(g, f, i2)
        _check(rep, t, "fwd: G*I_1..*I_p + F' = (G + F)*I",
               apply_flip(apply_witness(g, VMinorWitness(r.partition)), r.flip)
               == local_complement_set(apply_flip(g, f), i2), _inst(g, f, i=i2))
        rep.observe("fwd: parts <= 2k", 2 * len(flip_classes_of(f, i2)), len(r.partition),
                    _inst(g, f, i=i2), t)
        r = commute_corollary_bwd(g, f, i)
        _check(rep, t, "bwd: (G + F')*I_p..*I_1 = G*I + F",
               apply_witness(apply_flip(g, r.flip), VMinorWitness(tuple(reversed(r.partition))))
               == apply_flip(local_complement_set(g, i), f), inst)
        rep.observe("bwd: parts <= 2k", 2 * k_i, len(r.partition), inst, t)
    except VmlabError as exc:
        rep.checks += 1
        rep.fail(t, "raised", inst, f"{type(exc).__name__}: {exc}")


def _clean(rep, rng, t, p):
    g = random_graph(rng, rng.randint(1, 12))
    f = random_flip(rng, g.vertices, rng.randint(1, 4))
    i = random_independent_set(rng, g)
    inst = _inst(g, f, i=i)
    f2 = clean_flip(g, f, i)
    a, b = apply_flip(g, f2), apply_flip(g, f)
    ok = all(a.adjacent(u, v) == (b.adjacent(u, v) and not (u in i and v in i))
             for u in g.vertices for v in g.vertices if u < v)
    _check(rep, t, "removes exactly the I-internal edges", ok, inst)
    rep.observe("classes <= 2k", 2 * f.k, f2.k, inst, t)


def _spread(rep, rng, t, p):
    g = random_graph(rng, rng.randint(1, 12))
    f = random_flip(rng, g.vertices, rng.randint(1, 3))
    i = random_independent_set(rng, g)
    inst = _inst(g, f, i=i)
    f2 = spread_flip(g, f, i)
    after = all_pairs_distances(apply_flip(local_complement_set(g, i), f2))
    before = all_pairs_distances(apply_flip(g, f))
    ok = all(after[x][y] >= (math.inf if before[x][y] == math.inf else math.ceil(before[x][y] / 2))
             for x in g.vertices for y in g.vertices)
    _check(rep, t, "dist after >= ceil(dist before / 2)", ok, inst)
    rep.observe("classes <= 2k 2^(2k)", 2 * f.k * 4 ** f.k, len(f2.occupied()), inst, t)


def random_svm_flip_instance(rng, max_n: int = 10, max_k: int = 4):
    while True:
        g = random_graph(rng, rng.randint(1, max_n))
        i = sorted(random_independent_set(rng, g, p=0.6))
        if i:
            break
    k = rng.randint(1, min(max_k, len(i)))
    i = sorted(rng.sample(i, k))
    classes = list(range(1, k + 1))
    rng.shuffle(classes)
    iota = {v: rng.randint(1, k) for v in g.vertices}
    iota.update(dict(zip(i, classes)))
    pairs = frozenset((a, b) for a in range(1, k + 1) for b in range(a, k + 1) if rng.random() < 0.5)
    return g, Flip(k, iota, pairs), frozenset(i)


def _svm_flip(rep, rng, t, p):
    g, f, i = random_svm_flip_instance(rng)
    inst = _inst(g, f, i=i)
    seq = reduce_flip_by_pivots(g, f, i)
    rep.observe("p <= floor(3k/2)", 3 * f.k // 2, len(seq), inst, t)
    rep.observe("uses per element <= 2", 2, max((seq.count(z) for z in seq), default=0), inst, t)
    if len(seq) <= 3 * f.k // 2:
        try:
            check_pivot_reduction(g, f, i, seq)
            rep.checks += 1
        except VmlabError as exc:
            rep.checks += 1
            rep.fail(t, "pivot reduction", inst, str(exc))


def random_small_graph(rng, max_n: int = 6) -> Graph:
    return random_graph(rng, rng.randint(1, max_n))


def _unsub(rep, rng, t, p):
    h = random_small_graph(rng, 6)
    rs = [p["r"]] if "r" in p else list(range(8))
    for r in rs:
        g, smap = subdivision(h, r)
        inst = _inst(h, r=r)
        w = unsubdivide(g, smap)
        expect = math.ceil(math.log2(r + 1)) if h.size else 0
        _check(rep, t, "depth = ceil(log2(r + 1))", w.depth == expect, inst, f"depth {w.depth}")
        _check(rep, t, "replay yields H", apply_witness(g, w) == h.with_labels(None), inst)
        rep.observe("depth", expect, w.depth, inst, t)
        if g.order <= 10 and w.depth <= 3:
            res = is_depth_r_vminor(g, h, w.depth)
            _check(rep, t, "search oracle finds H", res.found, inst)


def _om2si(rep, rng, t, p):
    model = random_split_interval_model(rng, p.get("intervals", 8))
    inst = {"points": {v: str(x) for v, x in model.points.items()},
            "intervals": {v: [str(a), str(b)] for v, (a, b) in model.intervals.items()}}
    try:
        split_interval_to_ordered_matching(model)
        rep.checks += 1
    except VmlabError as exc:
        rep.checks += 1
        rep.fail(t, "embedding", inst, str(exc))


def _roundtrip(rep, rng, t, p):
    m = random_structure(rng, p.get("n", 8), p.get("k", 3))
    _check(rep, t, "M = K(f_X(M))", roundtrip(m), {"structure": m.to_text()})


def check_example_si(n: int, max_domain: int | None = None) -> list[str]:
    """Mismatches of nu, eta and phi on ``power_split_interval(n)``.  At
    ``n = 4`` the graph has 57 vertices, so ``max_domain`` must be raised."""
    ps = power_split_interval(n)
    defs = load_formulas("split_interval")
    ev = Evaluator(ps.graph, defs, **({"max_domain": max_domain} if max_domain else {}))
    g = ps.graph
    bad = []
    nu = {v for v in g.vertices if ev.holds(Atom("nu", ("x",)), {"x": v})}
    eta = {v for v in g.vertices if ev.holds(Atom("eta", ("x",)), {"x": v})}
    if nu != set(ps.a.values()) | set(ps.a_prime.values()):
        bad.append(f"nu holds on {sorted(g.label(v) for v in nu)}")
    if eta != set(ps.b.values()):
        bad.append(f"eta holds on {sorted(g.label(v) for v in eta)}")
    phi = Atom("phi", ("x", "y"))
    for i, a in ps.a.items():
        for j, b in ps.b.items():
            if ev.holds(phi, {"x": a, "y": b}) != (i in j):
                bad.append(f"phi(a{i}, b{sorted(j)}) is wrong")
    return bad


def _example_si(rep, rng, t, p):
    n = p.get("n", 3)
    cap = 64 if os.environ.get("VMLAB_EXTENDED") else None
    for msg in check_example_si(n, cap) or [None]:
        _check(rep, t, f"example n={n}", msg is None, {"n": n}, msg or "")


def _footnote(rep, rng, t, p):
    n = p.get("n", 4)
    for m in range(1, n + 1):
        for sigma in permutations(range(1, m + 1)):
            _check(rep, t, "permutation recovered", permutation_roundtrip(sigma), {"sigma": list(sigma)})


SUITES = {
    "flip-involution": (_flip_involution, 1000),
    "lc-involution": (_lc_involution, 1000),
    "pivot": (_pivot, 500),
    "commute0": (_commute0, 1000),
    "commute0b": (_commute0b, 300),
    "commute": (_commute, 500),
    "clean": (_clean, 500),
    "spread": (_spread, 500),
    "svm-flip": (_svm_flip, 300),
    "unsub": (_unsub, 100),
    "om2si": (_om2si, 100),
    "roundtrip-XK": (_roundtrip, 500),
    "example-si": (_example_si, 1),
    "footnote-perm": (_footnote, 1),
}
DETERMINISTIC = {"example-si", "footnote-perm"}


def trial_rng(suite: str, seed: int, trial: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{trial}")


def run_suite(name: str, seed: int = 0, trials: int | None = None, **params) -> VerificationReport:
    if name not in SUITES:
        raise KeyError(name)
    fn, default = SUITES[name]
    trials = 1 if name in DETERMINISTIC else (default if trials is None else trials)
    rep = VerificationReport(name, seed, trials, {k: v for k, v in params.items() if v is not None})
    for t in range(trials):
        fn(rep, trial_rng(name, seed, t), t, rep.params)
    return rep
