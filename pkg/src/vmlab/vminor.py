"""Local complementation, pivoting, shallow vertex-minor witnesses, subdivision
reduction, and pivot elimination of a flip."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import Graph, closed_neighborhood, delete_vertices, iter_bits
from .errors import FaultyComplementation, InvariantError, PreconditionError, ValidationError
from .flips import Flip, apply_flip, flip_classes_of


def local_complement(g: Graph, v: int) -> Graph:
    """``G * v``: complement adjacency between distinct neighbours of ``v``."""
    s = g.slot(v)
    nb = g.rows[s]
    rows = list(g.rows)
    for t in iter_bits(nb):
        rows[t] ^= nb & ~(1 << t)
    return Graph._from_rows(g.vertices, rows, g._labels, g._slot)


def pivot(g: Graph, u: int, v: int) -> Graph:
    """``G ^ uv = G * u * v * u`` for an edge ``uv``."""
    if u == v or not g.adjacent(u, v):
        raise PreconditionError(f"pivot needs an edge, {u}{v} is not one")
    return local_complement(local_complement(local_complement(g, u), v), u)


def local_complement_set(g: Graph, i: Iterable[int], step: int | None = None) -> Graph:
    """``G * I`` for an independent set ``I``.

    Raises :class:`FaultyComplementation` when ``I`` is not independent; the
    notation is meaningless then and nothing is computed.
    """
    i = set(i)
    m = g.mask(i)
    for s in iter_bits(m):
        if g.rows[s] & m:
            other = g.ids_of(g.rows[s] & m)[0]
            raise FaultyComplementation(
                f"set is not independent: {g.vertices[s]}-{other} is an edge"
                + ("" if step is None else f" (step {step})"),
                step=step, offending=(g.vertices[s], other))
    rows = list(g.rows)
    # neighbourhoods of I-members are unaffected by each other, so the
    # sequential result equals the summed formula
    for s in iter_bits(m):
        nb = g.rows[s]
        for t in iter_bits(nb):
            rows[t] ^= nb & ~(1 << t)
    return Graph._from_rows(g.vertices, rows, g._labels, g._slot)


@dataclass(frozen=True)
class VMinorWitness:
    """``G * I_1 * ... * I_c - D`` with deletions postponed to the end."""

    steps: tuple[frozenset[int], ...] = ()
    deletions: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(frozenset(s) for s in self.steps))
        object.__setattr__(self, "deletions", frozenset(self.deletions))

    @property
    def depth(self) -> int:
        return len(self.steps)

    def to_json(self) -> str:
        return json.dumps({"steps": [sorted(s) for s in self.steps],
                           "deletions": sorted(self.deletions)})

    @classmethod
    def from_json(cls, text: str) -> "VMinorWitness":
        try:
            data = json.loads(text)
            return cls(tuple(frozenset(int(v) for v in s) for s in data["steps"]),
                       frozenset(int(v) for v in data["deletions"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed witness: {exc}") from None


def apply_witness(g: Graph, w: VMinorWitness) -> Graph:
    for idx, s in enumerate(w.steps):
        g = local_complement_set(g, s, step=idx)
    return delete_vertices(g, w.deletions)


def unsubdivide(g: Graph, subdivision_map: Mapping[tuple[int, int], Sequence[int]]) -> VMinorWitness:
    """Witness recovering ``H`` from its subdivision ``g``.

    ``subdivision_map`` sends each edge ``(u, v)`` of ``H`` to the internal
    vertices of its path, listed from ``u`` to ``v``.  Each round complements
    and removes the internal vertices at odd positions (1, 3, 5, ...) of every
    path, halving the longest path, so the depth is ``ceil(log2(r + 1))``.
    """
    internal: set[int] = set()
    for (u, v), path in subdivision_map.items():
        for p in path:
            if p in internal:
                raise ValidationError(f"vertex {p} lies on two subdivided paths")
            internal.add(p)
    h_vertices = [v for v in g.vertices if v not in internal]
    h_edges = set()
    expected = 0
    for (u, v), path in subdivision_map.items():
        if u not in g or v not in g or u in internal or v in internal:
            raise ValidationError(f"edge {u}{v} has an endpoint outside H")
        seq = [u, *path, v]
        for a, b in zip(seq, seq[1:]):
            if b not in g or not g.adjacent(a, b):
                raise ValidationError(f"{a}-{b} missing from the subdivided path {u}..{v}")
        expected += len(seq) - 1
        h_edges.add(frozenset((u, v)))
    if expected != g.size or len(h_edges) != len(subdivision_map):
        raise ValidationError("map does not account for exactly the edges of g")

    paths = [list(p) for p in subdivision_map.values()]
    steps = []
    while any(paths):
        chosen = frozenset(p[k] for p in paths for k in range(0, len(p), 2))
        steps.append(chosen)
        paths = [p[1::2] for p in paths]
    w = VMinorWitness(tuple(steps), frozenset(internal))

    r = max((len(p) for p in subdivision_map.values()), default=0)
    if w.depth != math.ceil(math.log2(r + 1)):
        raise InvariantError(f"depth {w.depth} differs from ceil(log2({r}+1))")
    h = Graph(h_vertices, [tuple(e) for e in h_edges])
    if apply_witness(g, w) != h:
        raise InvariantError("unsubdivide witness does not reproduce H")
    return w


def reduce_flip_by_pivots(g: Graph, f: Flip, i: Iterable[int]) -> list[int]:
    """Single-vertex complementation sequence undoing ``f`` away from ``N_g[i]``.

    ``i`` is independent in ``g`` and holds exactly one vertex of every class
    of ``f``.  Self-active classes cost one complementation, other active
    classes are cleared in pairs by a pivot ``z z' z``; the smallest active
    class is handled first.
    """
    i = sorted(set(i))
    if not all(not (g.row(u) & g.mask(i)) for u in i):
        raise PreconditionError("reduce_flip_by_pivots needs i independent in g")
    traces = flip_classes_of(f, i)
    rep = {}
    for t in traces:
        if len(t) != 1:
            raise PreconditionError("i must contain exactly one vertex of each class")
        (z,) = t
        rep[f.cls(z)] = z
    if set(rep) != set(range(1, f.k + 1)):
        raise PreconditionError("every class of the flip must be inhabited by i")

    k = f.k
    tau = [[f.t(a, b) for b in range(1, k + 1)] for a in range(1, k + 1)]
    seq: list[int] = []
    while True:
        active = [a for a in range(k) if any(tau[a])]
        if not active:
            break
        selfish = [a for a in active if tau[a][a]]
        if selfish:
            a = selfish[0]
            col = [tau[x][a] for x in range(k)]
            tau = [[tau[x][y] ^ (col[x] & col[y]) for y in range(k)] for x in range(k)]
            seq.append(rep[a + 1])
        else:
            a = active[0]
            b = next(y for y in range(k) if tau[a][y])
            ca = [tau[x][a] for x in range(k)]
            cb = [tau[x][b] for x in range(k)]
            tau = [[tau[x][y] ^ (ca[x] & cb[y]) ^ (cb[x] & ca[y]) for y in range(k)]
                   for x in range(k)]
            seq += [rep[a + 1], rep[b + 1], rep[a + 1]]
    return seq


def replay_pivots(g: Graph, f: Flip, seq: Iterable[int]) -> Graph:
    h = apply_flip(g, f)
    for z in seq:
        h = local_complement(h, z)
    return h


def check_pivot_reduction(g: Graph, f: Flip, i: Iterable[int], seq: Sequence[int]) -> None:
    """Raise :class:`InvariantError` unless ``seq`` meets every stated bound."""
    i = set(i)
    if len(seq) > (3 * f.k) // 2:
        raise InvariantError(f"{len(seq)} complementations exceed floor(3k/2) = {3 * f.k // 2}")
    for z in set(seq):
        if z not in i or seq.count(z) > 2:
            raise InvariantError(f"vertex {z} used illegally")
    nbhd = closed_neighborhood(g, i)
    lhs = delete_vertices(replay_pivots(g, f, seq), nbhd)
    rhs = delete_vertices(g, nbhd)
    if lhs != rhs:
        raise InvariantError("pivot sequence does not undo the flip outside N[i]")
