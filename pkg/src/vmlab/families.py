"""Generators for the graph families, and the split-interval to
ordered-matching embedding.

Vertex ids are deterministic so that callers can address roles directly:

* ``half_graph(n)``: ``a_i = i - 1``, ``b_j = n + j - 1``.
* ``permutation_graph(sigma)``: vertex ``i`` is ``i`` (1-based).
* ``comparability_grid(n)``: ``a_{i,j} = (i - 1) n + (j - 1)``.
* ``crossing``: ``a_i = i - 1``, ``b_j = n + j - 1`` and
  ``p_{i,j,k} = 2n + ((i - 1) n + (j - 1)) r + (k - 1)`` for ``1 <= k <= r``.
* ``ordered_matching_graph``: ``a_i = i - 1``, ``b_j = n + j - 1`` and the
  matching vertices follow in sorted pair order.

Every generated graph carries role labels (``a1``, ``b3``, ``p1,2,1``, ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .core import Graph, induced_subgraph
from .errors import DomainError, InvariantError, ValidationError
from .flips import Flip, apply_flip
from .vminor import local_complement


def half_graph(n: int) -> Graph:
    if n < 1:
        raise DomainError("half_graph needs n >= 1")
    edges = [(i - 1, n + j - 1) for i in range(1, n + 1) for j in range(i, n + 1)]
    labels = {i - 1: f"a{i}" for i in range(1, n + 1)}
    labels.update({n + j - 1: f"b{j}" for j in range(1, n + 1)})
    return Graph(range(2 * n), edges, labels)


def _check_permutation(sigma: Sequence[int]) -> list[int]:
    sigma = list(sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise DomainError(f"{sigma} is not a permutation of [1..{len(sigma)}]")
    return sigma


def permutation_graph(sigma: Sequence[int]) -> Graph:
    """Inversion graph on ``[n]``; ``sigma[i - 1]`` is ``sigma(i)``."""
    sigma = _check_permutation(sigma)
    n = len(sigma)
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
             if sigma[i - 1] > sigma[j - 1]]
    return Graph(range(1, n + 1), edges, {i: str(i) for i in range(1, n + 1)})


def comparability_grid(n: int) -> Graph:
    """``a_{i,j} ~ a_{i',j'}`` iff ``i = i'``, ``j = j'`` or ``(i < j) <-> (i' < j')``."""
    if n < 1:
        raise DomainError("comparability_grid needs n >= 1")
    cells = list(product(range(1, n + 1), repeat=2))
    vid = {(i, j): (i - 1) * n + (j - 1) for i, j in cells}
    edges = [(vid[p], vid[q]) for p, q in combinations(cells, 2)
             if p[0] == q[0] or p[1] == q[1] or ((p[0] < p[1]) == (q[0] < q[1]))]
    return Graph(vid.values(), edges, {v: f"a{i},{j}" for (i, j), v in vid.items()})


CROSSING_KINDS = ("star", "clique", "half")


def crossing_vertex(n: int, r: int, i: int, j: int, k: int) -> int:
    """Id of ``p_{i,j,k}`` (``k = 0`` is ``a_i``, ``k = r + 1`` is ``b_j``)."""
    if k == 0:
        return i - 1
    if k == r + 1:
        return n + j - 1
    return 2 * n + ((i - 1) * n + (j - 1)) * r + (k - 1)


def crossing(kind: str, r: int, n: int, flip_tau: Sequence[Sequence[int]] | None = None) -> Graph:
    """Star, clique or half-graph ``r``-crossing of order ``n``.

    With ``flip_tau`` (an ``(r + 2) x (r + 2)`` symmetric 0/1 matrix) the flip
    whose class ``k + 1`` is the layer ``{p_{i,j,k}}`` is applied on top.
    """
    if kind not in CROSSING_KINDS:
        raise DomainError(f"unknown crossing kind {kind!r}; expected one of {CROSSING_KINDS}")
    if r < 1 or n < 1:
        raise DomainError("crossing needs r >= 1 and n >= 1")
    p = lambda i, j, k: crossing_vertex(n, r, i, j, k)
    pairs = list(product(range(1, n + 1), repeat=2))
    edges = set()
    for i, j in pairs:
        for k in range(r + 1):
            edges.add((p(i, j, k), p(i, j, k + 1)))
    if kind == "clique":
        for i in range(1, n + 1):
            edges.update(combinations([p(i, j, 1) for j in range(1, n + 1)], 2))
        for j in range(1, n + 1):
            edges.update(combinations([p(i, j, r) for i in range(1, n + 1)], 2))
    elif kind == "half":
        for i, (i2, j) in product(range(1, n + 1), pairs):
            if i2 >= i:
                edges.add((p(i, 1, 0), p(i2, j, 1)))
        for j, (i, j2) in product(range(1, n + 1), pairs):
            if j2 >= j:
                edges.add((p(1, j, r + 1), p(i, j2, r)))
    labels = {p(i, 1, 0): f"a{i}" for i in range(1, n + 1)}
    labels.update({p(1, j, r + 1): f"b{j}" for j in range(1, n + 1)})
    layer = {v: 1 for v in range(n)}
    layer.update({v: r + 2 for v in range(n, 2 * n)})
    for (i, j), k in product(pairs, range(1, r + 1)):
        labels[p(i, j, k)] = f"p{i},{j},{k}"
        layer[p(i, j, k)] = k + 1
    g = Graph(range(2 * n + r * n * n), edges, labels)
    if flip_tau is not None:
        if len(flip_tau) != r + 2:
            raise DomainError(f"flip_tau must be {r + 2} x {r + 2}")
        g = apply_flip(g, Flip.from_matrix(layer, flip_tau))
    return g


@dataclass(frozen=True)
class Matching:
    """Perfect matching on ``[n] x [n]``; the first coordinate is the a-side index."""

    pairs: frozenset

    def __post_init__(self):
        pairs = frozenset((int(a), int(b)) for a, b in self.pairs)
        n = len(pairs)
        if sorted(a for a, _ in pairs) != list(range(1, n + 1)) or \
                sorted(b for _, b in pairs) != list(range(1, n + 1)):
            raise DomainError(f"{sorted(pairs)} is not a perfect matching of [n] x [n]")
        object.__setattr__(self, "pairs", pairs)

    @property
    def n(self) -> int:
        return len(self.pairs)


def ordered_matching_graph(m: Matching | Iterable[tuple[int, int]]) -> Graph:
    if not isinstance(m, Matching):
        m = Matching(frozenset(m))
    n = m.n
    order = sorted(m.pairs)
    mid = {pair: 2 * n + s for s, pair in enumerate(order)}
    edges = []
    for (k, l), v in mid.items():
        edges += [(i - 1, v) for i in range(1, k + 1)]
        edges += [(n + j - 1, v) for j in range(1, l + 1)]
    labels = {i - 1: f"a{i}" for i in range(1, n + 1)}
    labels.update({n + j - 1: f"b{j}" for j in range(1, n + 1)})
    labels.update({v: f"({k},{l})" for (k, l), v in mid.items()})
    return Graph(range(3 * n), edges, labels)


def ordered_matching_vertex(m: Matching, pair: tuple[int, int]) -> int:
    return 2 * m.n + sorted(m.pairs).index(tuple(pair))


@dataclass(frozen=True)
class IntervalModel:
    """Split interval representation with singleton stable points.

    ``points`` maps a vertex id to its position, ``intervals`` maps a vertex
    id to ``(left, right)``.  Positions are exact rationals.
    """

    points: Mapping[int, Fraction]
    intervals: Mapping[int, tuple[Fraction, Fraction]]
    labels: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        pts = {int(v): Fraction(x) for v, x in self.points.items()}
        ivs = {int(v): (Fraction(l), Fraction(r)) for v, (l, r) in self.intervals.items()}
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "intervals", ivs)
        object.__setattr__(self, "labels", dict(self.labels))

    def validate(self) -> None:
        if set(self.points) & set(self.intervals):
            raise ValidationError("an id is used both as a point and as an interval")
        if len(set(self.points.values())) != len(self.points):
            raise ValidationError("stable points must have distinct positions")
        for v, (l, r) in self.intervals.items():
            if l > r:
                raise ValidationError(f"interval {v} has left end {l} > right end {r}")
        if self.intervals:
            if max(l for l, _ in self.intervals.values()) > min(r for _, r in self.intervals.values()):
                raise ValidationError("clique intervals do not pairwise intersect")

    def graph(self) -> Graph:
        self.validate()
        edges = list(combinations(sorted(self.intervals), 2))
        for v, (l, r) in self.intervals.items():
            edges += [(u, v) for u, x in self.points.items() if l <= x <= r]
        return Graph(list(self.points) + list(self.intervals), edges, self.labels or None)


@dataclass(frozen=True)
class PowerSplitInterval:
    graph: Graph
    model: IntervalModel
    a: dict            # i -> id of a_i
    a_prime: dict      # i -> id of a_i'
    b: dict            # frozenset J -> id of b_J
    intervals: dict    # None for the a_1..a_n' interval, else (i, J) -> id


def _subset_label(j: frozenset) -> str:
    return "{" + ",".join(map(str, sorted(j))) + "}"


def power_split_interval(n: int) -> PowerSplitInterval:
    """Split interval graph encoding the power set of ``[n]``.

    Stable points ``a_1, a_1', ..., a_n, a_n'`` then ``b_J`` for the subsets
    ``J`` in decreasing order of ``sum_{i in J} 2^(i-1)`` (``b_[n]`` first,
    ``b_{}`` last).  Clique intervals: ``a_1 .. a_n'`` and ``a_i .. b_J`` for
    every ``i in J``.
    """
    if n < 2:
        raise DomainError("power_split_interval needs n >= 2")
    subsets = sorted((frozenset(i for i in range(1, n + 1) if code >> (i - 1) & 1)
                      for code in range(1 << n)),
                     key=lambda j: -sum(1 << (i - 1) for i in j))
    points, labels = {}, {}
    a, a_prime, b = {}, {}, {}
    vid = 0
    for i in range(1, n + 1):
        for role, store in (("a", a), ("a'", a_prime)):
            store[i] = vid
            points[vid] = Fraction(vid)
            labels[vid] = f"{role[0]}{i}{role[1:]}"
            vid += 1
    for j in subsets:
        b[j] = vid
        points[vid] = Fraction(vid)
        labels[vid] = "b" + _subset_label(j)
        vid += 1
    ivs, named = {}, {}
    ivs[vid] = (points[a[1]], points[a_prime[n]])
    named[None] = vid
    labels[vid] = "I0"
    vid += 1
    for i in range(1, n + 1):
        for j in subsets:
            if i in j:
                ivs[vid] = (points[a[i]], points[b[j]])
                named[(i, j)] = vid
                labels[vid] = f"I{i},{_subset_label(j)}"
                vid += 1
    model = IntervalModel(points, ivs, labels)
    return PowerSplitInterval(model.graph(), model, a, a_prime, b, named)


def half_graph_split_interval(n: int) -> tuple[IntervalModel, int]:
    """Split interval model ``p_1 < ... < p_n < c`` with intervals ``[p_j, c]``.

    Returns the model and the id of ``c``; ``(G * c) - c`` is ``half_graph(n)``
    under ``a_i -> interval i``, ``b_j -> p_j``.  Ids: ``p_j = j - 1``,
    ``c = n``, interval ``j`` is ``n + j``.
    """
    if n < 1:
        raise DomainError("half_graph_split_interval needs n >= 1")
    points = {j - 1: Fraction(j) for j in range(1, n + 1)}
    points[n] = Fraction(n + 1)
    ivs = {n + j: (Fraction(j), Fraction(n + 1)) for j in range(1, n + 1)}
    labels = {j - 1: f"p{j}" for j in range(1, n + 1)}
    labels[n] = "c"
    labels.update({n + j: f"J{j}" for j in range(1, n + 1)})
    return IntervalModel(points, ivs, labels), n


def subdivision(h: Graph, r: int) -> tuple[Graph, dict]:
    """Replace every edge ``u < v`` of ``h`` by a path with ``r`` internal vertices.

    New ids start after ``max(h)``; the map sends ``(u, v)`` to the internal
    ids listed from ``u`` to ``v``.
    """
    if r < 0:
        raise DomainError("r must be non-negative")
    nxt = max(h.vertices, default=-1) + 1
    edges, smap = [], {}
    labels = dict(h.labels)
    for u, v in h.edges():
        path = list(range(nxt, nxt + r))
        nxt += r
        smap[(u, v)] = path
        seq = [u, *path, v]
        edges += list(zip(seq, seq[1:]))
        for k, p in enumerate(path, start=1):
            labels[p] = f"s{u},{v},{k}"
    return Graph(list(h.vertices) + list(range(max(h.vertices, default=-1) + 1, nxt)),
                 edges, labels or None), smap


@dataclass(frozen=True)
class OrderedMatchingEmbedding:
    matching: Matching
    a1: int                      # id of a_1 in the ordered-matching graph
    embedding: dict              # input vertex id -> ordered-matching graph id
    graph: Graph                 # the ordered-matching graph


def split_interval_to_ordered_matching(model: IntervalModel) -> OrderedMatchingEmbedding:
    """Embed the graph of ``model`` into ``ordered_matching_graph(m) * a_1``.

    The leftmost stable point lying in every interval becomes ``a_1``; a
    fresh point ``c`` is added when there is none.  Stable
    points left of ``c`` are left ends, points right of ``c`` right ends.
    Walking outward from ``c``, each point is given to the first interval (in
    ``(left, right)`` order) whose extreme incidence it is; further intervals
    sharing that incidence get fresh points placed next to it on the outer
    side, and points claimed by no interval get a fresh interval whose other
    end is a fresh point at the far end.  No original incidence changes.
    """
    model.validate()
    pts = model.points
    ivs = model.intervals
    c_point = None
    if ivs:
        big_l = max(l for l, _ in ivs.values())
        small_r = min(r for _, r in ivs.values())
        common = sorted((x, v) for v, x in pts.items() if big_l <= x <= small_r)
        if common:
            c, c_point = common[0]
        else:
            c = big_l
    else:
        c = max(pts.values(), default=Fraction(-1)) + 1
    left = sorted((v for v in pts if pts[v] < c), key=lambda v: -pts[v])   # outward from c
    right = sorted((v for v in pts if pts[v] > c), key=lambda v: pts[v])

    def extreme(v, side):
        l, r = ivs[v]
        inside = [u for u in side if l <= pts[u] <= r]
        if not inside:
            return "c"
        return inside[-1]      # outermost incidence

    order = sorted(ivs, key=lambda v: (ivs[v], v))
    # slots are ("orig", id) | ("c",) | ("fresh", n); intervals are ("orig", id) | ("new", n)
    fresh = iter(range(10 ** 9))
    left_seq, right_seq = [], []
    lend, rend = {}, {}
    new_left_only, new_right_only = [], []
    for side, seq, ends, orphans in ((left, left_seq, lend, new_left_only),
                                     (right, right_seq, rend, new_right_only)):
        by_point: dict = {}
        for v in order:
            by_point.setdefault(extreme(v, side), []).append(("orig", v))
        for z in ["c"] + side:
            if z == "c" and seq is right_seq:
                # an interval may not end at c; push its right end past c
                for iv in by_point.get("c", []):
                    slot = ("fresh", next(fresh))
                    seq.append(slot)
                    ends[iv] = slot
                continue
            mine = by_point.get(z, [])
            slot = ("c",) if z == "c" else ("orig", z)
            if not mine:
                iv = ("new", next(fresh))
                mine = [iv]
                orphans.append(iv)
            seq.append(slot)
            ends[mine[0]] = slot
            for iv in mine[1:]:
                s2 = ("fresh", next(fresh))
                seq.append(s2)
                ends[iv] = s2
    # fresh intervals created on one side need an end on the other, at the far end
    for iv in new_left_only:
        s2 = ("fresh", next(fresh))
        right_seq.append(s2)
        rend[iv] = s2
    for iv in new_right_only:
        s2 = ("fresh", next(fresh))
        left_seq.append(s2)
        lend[iv] = s2

    m_size = len(left_seq)
    if len(right_seq) != m_size or set(lend) != set(rend) or len(lend) != m_size:
        raise InvariantError("augmented model is not a perfect matching")
    a_index = {slot: i for i, slot in enumerate(left_seq, start=1)}
    b_index = {slot: j for j, slot in enumerate(right_seq, start=1)}
    pair_of = {iv: (a_index[lend[iv]], b_index[rend[iv]]) for iv in lend}
    m = Matching(frozenset(pair_of.values()))
    om = ordered_matching_graph(m)
    emb = {}
    for v in pts:
        slot = ("c",) if v == c_point else ("orig", v)
        emb[v] = a_index[slot] - 1 if slot in a_index else m_size + b_index[slot] - 1
    for v in ivs:
        emb[v] = ordered_matching_vertex(m, pair_of[("orig", v)])
    result = OrderedMatchingEmbedding(m, 0, emb, om)
    check_ordered_matching_embedding(model.graph(), result)
    return result


def check_ordered_matching_embedding(g: Graph, e: OrderedMatchingEmbedding) -> None:
    """Raise :class:`InvariantError` unless ``g`` equals the induced subgraph of
    ``OM(m) * a_1`` on the image, pulled back along the embedding."""
    if len(set(e.embedding.values())) != len(e.embedding) or set(e.embedding) != set(g.vertices):
        raise InvariantError("embedding is not injective on the input graph")
    h = induced_subgraph(local_complement(e.graph, e.a1), e.embedding.values())
    back = {w: v for v, w in e.embedding.items()}
    if h.relabeled(back) != g:
        raise InvariantError("input graph is not the induced subgraph of OM(m) * a1")


def random_split_interval_model(rng, max_intervals: int = 8, max_points: int = 8) -> IntervalModel:
    """Random valid model: a common point is drawn first, then every interval
    is chosen to contain it, with endpoints on a small integer grid."""
    n_iv = rng.randint(0, max_intervals)
    n_pt = rng.randint(0, max_points)
    grid = 2 * (n_pt + n_iv) + 4
    positions = rng.sample(range(grid), n_pt)
    common = Fraction(rng.randint(0, grid - 1)) + Fraction(rng.choice((0, 1)), 2)
    points = {v: Fraction(x) for v, x in enumerate(positions)}
    ivs = {}
    for k in range(n_iv):
        l = Fraction(rng.randint(0, int(common)))
        r = Fraction(rng.randint(int(common) + 1, grid))
        if rng.random() < 0.3:
            l = common
        ivs[n_pt + k] = (min(l, common), max(r, common))
    return IntervalModel(points, ivs)
