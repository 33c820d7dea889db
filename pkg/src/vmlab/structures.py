"""Binary relational structures: per-relation local complementation,
depth-1 structure minors, and the encode/decode pair ``f_X`` / ``K``.

Relations are addressed by 1-based index.  A relation flagged symmetric is
stored with both orientations of every pair and has no loops.  The
encoding ``f_X`` puts the clone of element ``e`` in copy ``i`` at id
``e * k + (i - 1)``, so decoding recovers ``e`` as ``id // k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from .core import Graph
from .errors import DomainError, FaultyComplementation, PreconditionError, ValidationError


@dataclass(frozen=True)
class Relation:
    name: str
    symmetric: bool
    pairs: frozenset

    def __post_init__(self):
        pairs = set()
        for u, v in self.pairs:
            pairs.add((u, v))
            if self.symmetric:
                if u == v:
                    raise ValidationError(f"symmetric relation {self.name} has a loop at {u}")
                pairs.add((v, u))
        object.__setattr__(self, "pairs", frozenset(pairs))

    def neighbors(self, v) -> set:
        return {b for a, b in self.pairs if a == v}


@dataclass(frozen=True)
class BinaryStructure:
    domain: tuple
    relations: tuple = ()
    predicates: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        dom = tuple(sorted(set(self.domain)))
        rels = tuple(self.relations)
        preds = {k: frozenset(v) for k, v in sorted(dict(self.predicates).items())}
        ds = set(dom)
        for r in rels:
            bad = [p for p in r.pairs if p[0] not in ds or p[1] not in ds]
            if bad:
                raise ValidationError(f"relation {r.name} uses elements outside the domain: {bad[0]}")
        for k, v in preds.items():
            if not v <= ds:
                raise ValidationError(f"predicate {k} marks elements outside the domain")
        object.__setattr__(self, "domain", dom)
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "predicates", preds)

    def __hash__(self):
        return hash((self.domain, self.relations, tuple(self.predicates.items())))

    @classmethod
    def from_graph(cls, g: Graph, name: str = "E", predicates=None) -> "BinaryStructure":
        return cls(g.vertices, (Relation(name, True, frozenset(g.edges())),), predicates or {})

    def relation(self, index: int) -> Relation:
        if not 1 <= index <= len(self.relations):
            raise DomainError(f"relation index {index} outside 1..{len(self.relations)}")
        return self.relations[index - 1]

    def with_relation(self, index: int, rel: Relation) -> "BinaryStructure":
        rels = list(self.relations)
        rels[index - 1] = rel
        return BinaryStructure(self.domain, tuple(rels), self.predicates)

    def induced(self, keep: Iterable) -> "BinaryStructure":
        keep = set(keep)
        if not keep <= set(self.domain):
            raise DomainError("kept elements must belong to the domain")
        rels = tuple(Relation(r.name, r.symmetric,
                              frozenset(p for p in r.pairs if p[0] in keep and p[1] in keep))
                     for r in self.relations)
        return BinaryStructure(tuple(keep), rels, {k: v & keep for k, v in self.predicates.items()})

    def to_graph(self, index: int = 1) -> Graph:
        r = self.relation(index)
        if not r.symmetric:
            raise PreconditionError(f"relation {r.name} is not symmetric")
        return Graph(self.domain, [p for p in r.pairs if p[0] < p[1]])

    def to_model(self):
        from .logic.evaluate import Model
        return Model(self.domain, {r.name: r.pairs for r in self.relations}, dict(self.predicates))

    # text: "domain n", optional "ids ...", then "relation NAME symmetric|arbitrary m"
    # followed by m pair lines, then "predicate NAME id id ..." lines

    def to_text(self) -> str:
        lines = [f"domain {len(self.domain)}"]
        if self.domain != tuple(range(len(self.domain))):
            lines.append("ids " + " ".join(map(str, self.domain)))
        for r in self.relations:
            pairs = sorted(p for p in r.pairs if not r.symmetric or p[0] < p[1])
            lines.append(f"relation {r.name} {'symmetric' if r.symmetric else 'arbitrary'} {len(pairs)}")
            lines += [f"{u} {v}" for u, v in pairs]
        for name, members in self.predicates.items():
            lines.append(" ".join(["predicate", name, *map(str, sorted(members))]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BinaryStructure":
        lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        try:
            if lines[0][0] != "domain":
                raise ValueError("expected 'domain n'")
            n = int(lines[0][1])
            k = 1
            dom = list(range(n))
            if k < len(lines) and lines[k][0] == "ids":
                dom = [int(x) for x in lines[k][1:]]
                k += 1
            if len(dom) != n:
                raise ValueError("ids line does not list n ids")
            rels, preds = [], {}
            while k < len(lines):
                head = lines[k]
                if head[0] == "relation":
                    name, kind, m = head[1], head[2], int(head[3])
                    if kind not in ("symmetric", "arbitrary"):
                        raise ValueError(f"unknown relation kind {kind}")
                    pairs = [tuple(map(int, ln)) for ln in lines[k + 1:k + 1 + m]]
                    if len(pairs) != m or any(len(p) != 2 for p in pairs):
                        raise ValueError(f"relation {name} needs {m} pair lines")
                    rels.append(Relation(name, kind == "symmetric", frozenset(pairs)))
                    k += 1 + m
                elif head[0] == "predicate":
                    preds[head[1]] = frozenset(int(x) for x in head[2:])
                    k += 1
                else:
                    raise ValueError(f"unexpected line {' '.join(head)!r}")
        except (IndexError, ValueError) as exc:
            raise ValidationError(f"malformed structure file: {exc}") from None
        return cls(tuple(dom), tuple(rels), preds)


def lc_structure(m: BinaryStructure, rel: int, v) -> BinaryStructure:
    """``M *^{R_rel} v``: complement ``R_rel`` between distinct ``R_rel``-neighbours of ``v``."""
    r = m.relation(rel)
    if not r.symmetric:
        raise PreconditionError(f"relation {r.name} is not symmetric; it cannot be complemented")
    if v not in m.domain:
        raise DomainError(f"{v} is not in the domain")
    nb = r.neighbors(v)
    pairs = set(r.pairs)
    for a, b in product(nb, nb):
        if a != b:
            pairs ^= {(a, b)}
    return m.with_relation(rel, Relation(r.name, True, frozenset(pairs)))


def depth1_vm_structure(m: BinaryStructure, sets: Mapping[int, Iterable], deletions: Iterable = ()) -> BinaryStructure:
    """``M *^{R_1} I_1 * ... *^{R_a} I_a - D``, relations taken in increasing index."""
    for rel in sorted(sets):
        i = set(sets[rel])
        r = m.relation(rel)
        for a, b in r.pairs:
            if a in i and b in i and a != b:
                raise FaultyComplementation(
                    f"set for relation {rel} ({r.name}) is not independent: {a}-{b}",
                    relation=rel, offending=(a, b))
        for v in sorted(i):
            m = lc_structure(m, rel, v)
    return m.induced(set(m.domain) - set(deletions))


def mark_names(k: int, prefix: str = "P") -> list[str]:
    return [f"{prefix}{i}" for i in range(1, k + 1)]


def transduction_X(m: BinaryStructure, prefix: str = "P") -> BinaryStructure:
    """Colored digraph ``f_X(M)``: one copy of the domain per relation; inside
    copy ``i`` the edge relation is ``R_i``, and clones of one element in
    different copies are joined.  Copy ``i`` is marked ``P_i``; the original
    predicates hold on every clone."""
    k = len(m.relations)
    if k == 0:
        raise DomainError("f_X needs at least one binary relation")
    marks = mark_names(k, prefix)
    if set(marks) & set(m.predicates):
        raise ValidationError(f"mark names {marks} clash with predicates of the structure")
    clone = lambda e, i: e * k + (i - 1)
    dom = [clone(e, i) for e in m.domain for i in range(1, k + 1)]
    pairs = set()
    for i, r in enumerate(m.relations, start=1):
        pairs.update((clone(a, i), clone(b, i)) for a, b in r.pairs)
    for e in m.domain:
        for i, j in product(range(1, k + 1), repeat=2):
            if i != j:
                pairs.add((clone(e, i), clone(e, j)))
    symmetric = all(r.symmetric for r in m.relations)
    preds = {name: frozenset(clone(e, i) for e in m.domain) for i, name in enumerate(marks, start=1)}
    for name, members in m.predicates.items():
        preds[name] = frozenset(clone(e, i) for e in members for i in range(1, k + 1))
    return BinaryStructure(tuple(dom), (Relation("E", symmetric, frozenset(pairs)),), preds)


def interpretation_K(g: BinaryStructure, k: int | None = None, names: Sequence[str] | None = None,
                     symmetric: Sequence[bool] | None = None, prefix: str = "P") -> BinaryStructure:
    """Decode a colored digraph: the domain is ``P_1``, ``R_1`` is ``E`` there and
    ``R_i(x, y)`` holds when some ``P_i``-marked ``x'``, ``y'`` satisfy
    ``E(x, x')``, ``E(y, y')`` and ``E(x', y')``.  Ids are mapped back by ``// k``."""
    if k is None:
        k = 0
        while f"{prefix}{k + 1}" in g.predicates:
            k += 1
    if k == 0:
        raise DomainError("no marks found")
    names = list(names) if names is not None else [f"R{i}" for i in range(1, k + 1)]
    symmetric = list(symmetric) if symmetric is not None else [False] * k
    e = g.relation(1).pairs
    out_nb: dict = {}
    for a, b in e:
        out_nb.setdefault(a, set()).add(b)
    marks = [g.predicates.get(f"{prefix}{i}", frozenset()) for i in range(1, k + 1)]
    base = sorted(marks[0])
    back = {x: x // k for x in base}
    rels = [Relation(names[0], symmetric[0],
                     frozenset((back[a], back[b]) for a, b in e if a in marks[0] and b in marks[0]))]
    for i in range(1, k):
        pairs = set()
        for x, y in product(base, base):
            xs = out_nb.get(x, set()) & marks[i]
            ys = out_nb.get(y, set()) & marks[i]
            if any((x2, y2) in e for x2 in xs for y2 in ys):
                pairs.add((back[x], back[y]))
        rels.append(Relation(names[i], symmetric[i], frozenset(pairs)))
    mark_set = set(mark_names(k, prefix))
    preds = {name: frozenset(back[x] for x in members if x in back)
             for name, members in g.predicates.items() if name not in mark_set}
    return BinaryStructure(tuple(back.values()), tuple(rels), preds)


def roundtrip(m: BinaryStructure) -> bool:
    """``M = K(f_X(M))`` as labeled structures."""
    back = interpretation_K(transduction_X(m), len(m.relations),
                            [r.name for r in m.relations], [r.symmetric for r in m.relations])
    return back == m


def encoded_minor_replay(m: BinaryStructure, sets: Mapping[int, Iterable],
                         deletions: Iterable = ()) -> BinaryStructure:
    """Replay a structure minor inside ``f_X(M)``: complement the copy-``i``
    clones of ``I_i`` (relation order), then delete every clone of ``D``.
    Equals ``f_X(N)`` only in special cases; see the tests."""
    k = len(m.relations)
    enc = transduction_X(m)
    g = enc.to_graph() if enc.relation(1).symmetric else None
    if g is None:
        raise PreconditionError("replay needs all relations symmetric")
    as_struct = BinaryStructure.from_graph(g, "E", enc.predicates)
    for rel in sorted(sets):
        clones = {e * k + (rel - 1) for e in sets[rel]}
        as_struct = depth1_vm_structure(as_struct, {1: clones})
    gone = {e * k + i for e in deletions for i in range(k)}
    return as_struct.induced(set(as_struct.domain) - gone)


def random_structure(rng, max_domain: int = 8, max_k: int = 3, predicates: int = 1,
                     symmetric: bool | None = None) -> BinaryStructure:
    n = rng.randint(1, max_domain)
    k = rng.randint(1, max_k)
    rels = []
    for i in range(1, k + 1):
        sym = rng.random() < 0.5 if symmetric is None else symmetric
        p = rng.random()
        if sym:
            pairs = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p}
        else:
            pairs = {(u, v) for u in range(n) for v in range(n) if rng.random() < p}
        rels.append(Relation(f"R{i}", sym, frozenset(pairs)))
    preds = {f"C{q}": frozenset(v for v in range(n) if rng.random() < 0.5)
             for q in range(1, predicates + 1)}
    return BinaryStructure(tuple(range(n)), tuple(rels), preds)
