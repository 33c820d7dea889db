"""Exhaustive oracles at desk scale: shallow vertex-minor containment and the
flip scatter / flip break maxima."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Iterator

from .core import DEFAULT_CANON_CAP, Graph, canonical_form, iter_bits
from .errors import CapacityError, InvariantError
from .flips import Flip, apply_flip
from .vminor import VMinorWitness, apply_witness, local_complement_set

DEFAULT_CAP_N = 10
DEFAULT_CAP_DEPTH = 3
FLIP_CAP_N = 8
FLIP_CAP_K = 2


@dataclass
class SearchStats:
    nodes: int = 0
    dedup_hits: int = 0
    embedding_tests: int = 0


@dataclass(frozen=True)
class ContainmentResult:
    found: bool
    witness: VMinorWitness | None = None
    mapping: dict | None = None          # vertex of h -> vertex of g
    stats: SearchStats = field(default_factory=SearchStats)

    def to_json(self) -> dict:
        out = {"found": self.found,
               "stats": {"nodes": self.stats.nodes, "dedup_hits": self.stats.dedup_hits,
                         "embedding_tests": self.stats.embedding_tests}}
        if self.found:
            out["witness"] = {"steps": [sorted(s) for s in self.witness.steps],
                              "deletions": sorted(self.witness.deletions)}
            out["mapping"] = {str(k): v for k, v in sorted(self.mapping.items())}
        return out


def independent_sets(g: Graph, min_size: int = 1) -> Iterator[frozenset[int]]:
    """Independent sets by increasing size, then lexicographically by id."""
    ids = g.vertices
    n = len(ids)
    rows = g.rows

    def grow(size, start, mask, chosen):
        if len(chosen) == size:
            yield frozenset(chosen)
            return
        for s in range(start, n):
            if not (rows[s] & mask):
                chosen.append(ids[s])
                yield from grow(size, s + 1, mask | (1 << s), chosen)
                chosen.pop()

    for size in range(min_size, n + 1):
        any_found = False
        for s in grow(size, 0, 0, []):
            any_found = True
            yield s
        if not any_found:
            return


def find_induced_embedding(h: Graph, g: Graph) -> dict | None:
    """Some injective ``m: V(h) -> V(g)`` with ``h`` equal to ``g[m(V(h))]``
    (edges and non-edges preserved); the first one in id order."""
    if h.order > g.order:
        return None
    if h.order == 0:
        return {}
    hdeg = {v: h.degree(v) for v in h.vertices}
    gdeg = sorted((g.degree(v) for v in g.vertices), reverse=True)
    if any(a > b for a, b in zip(sorted(hdeg.values(), reverse=True), gdeg)):
        return None
    # order h's vertices so that each one is adjacent to an earlier one when possible
    order: list[int] = []
    left = set(h.vertices)
    while left:
        nxt = max(left, key=lambda v: (sum(1 for u in order if h.adjacent(u, v)), hdeg[v], -v))
        order.append(nxt)
        left.remove(nxt)
    cand = {v: [w for w in g.vertices if g.degree(w) >= hdeg[v]] for v in h.vertices}
    m: dict = {}
    used: set = set()

    def back(k):
        if k == len(order):
            return True
        v = order[k]
        for w in cand[v]:
            if w in used:
                continue
            if all(h.adjacent(u, v) == g.adjacent(m[u], w) for u in order[:k]):
                m[v] = w
                used.add(w)
                if back(k + 1):
                    return True
                del m[v]
                used.discard(w)
        return False

    return dict(m) if back(0) else None


def check_containment(g: Graph, h: Graph, res: ContainmentResult) -> None:
    """Replay a positive answer; raise :class:`InvariantError` on mismatch."""
    out = apply_witness(g, res.witness)
    inverse = {w: v for v, w in res.mapping.items()}
    if set(inverse) != set(out.vertices) or out.relabeled(inverse) != h:
        raise InvariantError("containment witness does not replay to h")


def is_depth_r_vminor(g: Graph, h: Graph, r: int, cap_n: int = DEFAULT_CAP_N,
                      cap_depth: int = DEFAULT_CAP_DEPTH) -> ContainmentResult:
    """Is ``h`` isomorphic to some ``g * I_1 * ... * I_c - D`` with ``c <= r``?

    Breadth-first over independent-set complementations with deletions left
    to the end; intermediate graphs are deduplicated by canonical form across
    all levels.  Every level is tested for an induced copy of ``h``, so the
    first witness found has the smallest depth.
    """
    if g.order > cap_n:
        raise CapacityError(f"order {g.order} exceeds the search cap {cap_n}")
    if r > cap_depth:
        raise CapacityError(f"depth {r} exceeds the search cap {cap_depth}")
    if r < 0:
        raise CapacityError("depth must be non-negative")
    stats = SearchStats()
    canon_cap = max(cap_n, DEFAULT_CANON_CAP)
    seen = {canonical_form(g, canon_cap).certificate}
    frontier = [(g, ())]
    for level in range(r + 1):
        nxt = []
        for cur, steps in frontier:
            stats.nodes += 1
            stats.embedding_tests += 1
            emb = find_induced_embedding(h, cur)
            if emb is not None:
                w = VMinorWitness(steps, frozenset(set(g.vertices) - set(emb.values())))
                res = ContainmentResult(True, w, emb, stats)
                check_containment(g, h, res)
                return res
            if level == r:
                continue
            for i in independent_sets(cur):
                g2 = local_complement_set(cur, i)
                key = canonical_form(g2, canon_cap).certificate
                if key in seen:
                    stats.dedup_hits += 1
                    continue
                seen.add(key)
                nxt.append((g2, steps + (i,)))
        frontier = nxt
    return ContainmentResult(False, None, None, stats)


def planted_instance(rng, max_n: int = 8, max_depth: int = 2):
    """``(g, h, w)`` with ``h = apply_witness(g, w)`` for a random witness ``w``."""
    from .randomgen import random_graph, random_independent_set
    n = rng.randint(1, max_n)
    g = random_graph(rng, n)
    steps, cur = [], g
    for _ in range(rng.randint(0, max_depth)):
        i = random_independent_set(rng, cur)
        steps.append(i)
        cur = local_complement_set(cur, i)
    w = VMinorWitness(tuple(steps), frozenset(rng.sample(g.vertices, rng.randint(0, n // 2))))
    return g, apply_witness(g, w), w


def _all_flips(vertices, k: int) -> Iterator[Flip]:
    vs = list(vertices)
    pairs = [(i, j) for i in range(1, k + 1) for j in range(i, k + 1)]
    for classes in product(range(1, k + 1), repeat=len(vs)):
        iota = dict(zip(vs, classes))
        for bits in product((0, 1), repeat=len(pairs)):
            yield Flip(k, iota, frozenset(p for p, b in zip(pairs, bits) if b))


def _distance_masks(g: Graph) -> list[list[int]]:
    """``layers[s][d]``: slots at distance exactly ``d`` from slot ``s``."""
    out = []
    for s in range(g.order):
        seen, frontier, layers = 1 << s, 1 << s, [1 << s]
        while frontier:
            nb = 0
            for t in iter_bits(frontier):
                nb |= g.rows[t]
            frontier = nb & ~seen
            seen |= frontier
            if frontier:
                layers.append(frontier)
        out.append(layers)
    return out


def _within(layers, s, d) -> int:
    """Slots at distance at most ``d`` from ``s``."""
    m = 0
    for x in layers[s][:max(d, -1) + 1]:
        m |= x
    return m


def _check_flip_caps(g: Graph, k: int):
    if g.order > FLIP_CAP_N:
        raise CapacityError(f"order {g.order} exceeds the flip search cap {FLIP_CAP_N}")
    if k > FLIP_CAP_K or k < 1:
        raise CapacityError(f"k = {k} outside the flip search range 1..{FLIP_CAP_K}")


def _subsets_desc(mask: int) -> Iterator[int]:
    bits = list(iter_bits(mask))
    for size in range(len(bits), -1, -1):
        for combo in combinations(bits, size):
            m = 0
            for b in combo:
                m |= 1 << b
            yield m


def flip_scatter_max(g: Graph, a: Iterable[int], r: int, k: int) -> int:
    """Largest ``S`` inside ``a`` that is pairwise at distance ``>= r`` in
    ``g + F`` for some ``k``-flip ``F``."""
    _check_flip_caps(g, k)
    amask = g.mask(a)
    best = 0
    for f in _all_flips(g.vertices, k):
        h = apply_flip(g, f)
        layers = _distance_masks(h)
        close = {s: _within(layers, s, r - 1) & amask & ~(1 << s) for s in iter_bits(amask)}
        for sub in _subsets_desc(amask):
            size = sub.bit_count()
            if size <= best:
                break
            if all(not (close[s] & sub) for s in iter_bits(sub)):
                best = size
                break
        if best == amask.bit_count():
            break
    return best


def flip_break_max(g: Graph, a: Iterable[int], r: int, k: int) -> int:
    """Largest ``m`` with ``A_1, A_2`` inside ``a``, ``|A_1| = |A_2| = m`` and
    every cross distance ``> r`` in ``g + F`` for some ``k``-flip ``F``."""
    _check_flip_caps(g, k)
    amask = g.mask(a)
    top = amask.bit_count() // 2
    best = 0
    for f in _all_flips(g.vertices, k):
        h = apply_flip(g, f)
        layers = _distance_masks(h)
        far = {s: amask & ~_within(layers, s, r) for s in iter_bits(amask)}
        for sub in _subsets_desc(amask):
            size = sub.bit_count()
            if size <= best:
                break
            common = amask
            for s in iter_bits(sub):
                common &= far[s]
            m = min(size, common.bit_count())
            best = max(best, m)
        if best == top:
            break
    return best
