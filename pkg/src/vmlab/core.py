"""Immutable labeled simple graphs with GF(2) adjacency rows.

Vertex ids are arbitrary non-negative integers and never change.  Internally
the ids are kept sorted and each one owns a *slot*; row ``s`` is an ``int``
bitmask over slots, so adding a row over GF(2) is a single XOR.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .errors import CapacityError, DomainError, ValidationError

INF = float("inf")

DEFAULT_CANON_CAP = 10


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """A simple undirected graph over stable integer vertex ids.

    Instances are immutable; every operation in this package returns a new
    graph.  Equality compares vertex ids and adjacency exactly; the optional
    ``labels`` (role names such as ``"a1"``) are carried along but ignored by
    ``==``.
    """

    __slots__ = ("_ids", "_slot", "_rows", "_labels", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = (),
                 labels: Mapping[int, str] | None = None):
        ids = sorted(set(vertices))
        for v in ids:
            if not isinstance(v, int) or v < 0:
                raise DomainError(f"vertex ids must be non-negative integers, got {v!r}")
        slot = {v: i for i, v in enumerate(ids)}
        rows = [0] * len(ids)
        for u, v in edges:
            if u not in slot or v not in slot:
                raise DomainError(f"edge {u}-{v} uses an unknown vertex")
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            su, sv = slot[u], slot[v]
            rows[su] |= 1 << sv
            rows[sv] |= 1 << su
        self._init(tuple(ids), slot, tuple(rows), labels)

    def _init(self, ids, slot, rows, labels):
        self._ids = ids
        self._slot = slot
        self._rows = rows
        if labels:
            self._labels = {v: str(labels[v]) for v in ids if v in labels}
        else:
            self._labels = {}
        self._hash = None

    @classmethod
    def _from_rows(cls, ids, rows, labels=None, slot=None) -> "Graph":
        g = cls.__new__(cls)
        if slot is None:
            slot = {v: i for i, v in enumerate(ids)}
        g._init(tuple(ids), slot, tuple(rows), labels)
        return g

    # basic accessors

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._ids

    @property
    def order(self) -> int:
        return len(self._ids)

    @property
    def size(self) -> int:
        return sum(r.bit_count() for r in self._rows) // 2

    @property
    def labels(self) -> dict[int, str]:
        return dict(self._labels)

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, v) -> bool:
        return v in self._slot

    def __iter__(self):
        return iter(self._ids)

    def slot(self, v: int) -> int:
        try:
            return self._slot[v]
        except (KeyError, TypeError):
            raise DomainError(f"unknown vertex {v!r}") from None

    def row(self, v: int) -> int:
        """Adjacency row of ``v`` as a slot bitmask."""
        return self._rows[self.slot(v)]

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    def mask(self, vs: Iterable[int]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self.slot(v)
        return m

    def ids_of(self, mask: int) -> list[int]:
        ids = self._ids
        return [ids[i] for i in iter_bits(mask)]

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self._rows[self.slot(u)] >> self.slot(v) & 1)

    has_edge = adjacent

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(self.ids_of(self.row(v)))

    def degree(self, v: int) -> int:
        return self.row(v).bit_count()

    def edges(self) -> list[tuple[int, int]]:
        ids = self._ids
        out = []
        for i, r in enumerate(self._rows):
            for j in iter_bits(r >> (i + 1)):
                out.append((ids[i], ids[i + 1 + j]))
        return out

    def label(self, v: int) -> str:
        self.slot(v)
        return self._labels.get(v, str(v))

    def vertex(self, label: str) -> int:
        """Look up a vertex by its role label."""
        for v, lab in self._labels.items():
            if lab == label:
                return v
        raise DomainError(f"no vertex labeled {label!r}")

    def with_labels(self, labels: Mapping[int, str] | None) -> "Graph":
        return Graph._from_rows(self._ids, self._rows, labels, self._slot)

    def relabeled(self, mapping: Mapping[int, int]) -> "Graph":
        """Rename vertices through the injective ``mapping``."""
        new_ids = [mapping[v] for v in self._ids]
        if len(set(new_ids)) != len(new_ids):
            raise DomainError("relabeling is not injective")
        return Graph(new_ids, ((mapping[u], mapping[v]) for u, v in self.edges()),
                     {mapping[v]: lab for v, lab in self._labels.items()})

    def check(self) -> None:
        """Assert symmetry and zero diagonal of the stored rows."""
        for i, r in enumerate(self._rows):
            if r >> i & 1:
                raise ValidationError(f"loop at {self._ids[i]}")
            if r >> len(self._rows):
                raise ValidationError("row references a missing slot")
            for j in iter_bits(r):
                if not self._rows[j] >> i & 1:
                    raise ValidationError("asymmetric adjacency")

    # value semantics

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._ids == other._ids and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._ids, self._rows))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(vertices={list(self._ids)}, edges={self.edges()})"

    # serialization

    def to_text(self) -> str:
        """``n m`` header, ``m`` edge lines, and an ``ids`` line when ids are not ``0..n-1``."""
        edges = self.edges()
        lines = [f"{self.order} {len(edges)}"]
        lines += [f"{u} {v}" for u, v in edges]
        if self._ids != tuple(range(self.order)):
            lines.append("ids " + " ".join(map(str, self._ids)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, labels: Mapping[int, str] | None = None) -> "Graph":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ValidationError("empty graph file")
        try:
            n, m = map(int, lines[0].split())
            edges = [tuple(map(int, ln.split())) for ln in lines[1:1 + m]]
        except ValueError as exc:
            raise ValidationError(f"malformed graph file: {exc}") from None
        if len(edges) != m or any(len(e) != 2 for e in edges):
            raise ValidationError("edge count does not match header")
        rest = lines[1 + m:]
        ids = list(range(n))
        if rest:
            head, *tail = rest[0].split()
            if head != "ids" or len(rest) > 1:
                raise ValidationError(f"unexpected trailing line {rest[0]!r}")
            ids = [int(t) for t in tail]
            if len(ids) != n:
                raise ValidationError("ids line does not list n vertices")
        return cls(ids, edges, labels)

    def to_dot(self, name: str = "G") -> str:
        out = [f"graph {name} {{"]
        for v in self._ids:
            out.append(f'  {v} [label="{self.label(v)}"];')
        for u, v in self.edges():
            out.append(f"  {u} -- {v};")
        out.append("}")
        return "\n".join(out) + "\n"

    def labels_json(self) -> str:
        return json.dumps({str(v): lab for v, lab in sorted(self._labels.items())}, indent=1)


def load_labels(text: str) -> dict[int, str]:
    return {int(k): v for k, v in json.loads(text).items()}


def _check_subset(g: Graph, s: Iterable[int]) -> list[int]:
    s = list(s)
    for v in s:
        g.slot(v)
    return s


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    keep = sorted(set(_check_subset(g, keep)))
    old = [g.slot(v) for v in keep]
    pos = {s: i for i, s in enumerate(old)}
    rows = []
    for s in old:
        r = 0
        for t in iter_bits(g.rows[s]):
            if t in pos:
                r |= 1 << pos[t]
        rows.append(r)
    return Graph._from_rows(keep, rows, g._labels)


def delete_vertices(g: Graph, d: Iterable[int]) -> Graph:
    d = set(_check_subset(g, d))
    return induced_subgraph(g, [v for v in g.vertices if v not in d])


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    m = g.mask(s)
    return all(not (g.rows[i] & m) for i in iter_bits(m))


def closed_neighborhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    m = g.mask(s)
    out = m
    for i in iter_bits(m):
        out |= g.rows[i]
    return frozenset(g.ids_of(out))


def _bfs_slots(rows, start: int) -> list[float]:
    dist = [INF] * len(rows)
    dist[start] = 0
    frontier = 1 << start
    seen = frontier
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for i in iter_bits(frontier):
            nxt |= rows[i]
        nxt &= ~seen
        seen |= nxt
        for i in iter_bits(nxt):
            dist[i] = d
        frontier = nxt
    return dist


def distance(g: Graph, u: int, v: int) -> float:
    """Shortest-path length, or ``INF`` when ``u`` and ``v`` are disconnected."""
    su, sv = g.slot(u), g.slot(v)
    return _bfs_slots(g.rows, su)[sv]


def distances_from(g: Graph, u: int) -> dict[int, float]:
    dist = _bfs_slots(g.rows, g.slot(u))
    return dict(zip(g.vertices, dist))


def all_pairs_distances(g: Graph) -> dict[int, dict[int, float]]:
    return {v: dict(zip(g.vertices, _bfs_slots(g.rows, i))) for i, v in enumerate(g.vertices)}


def connected_components(g: Graph) -> list[frozenset[int]]:
    left = (1 << g.order) - 1
    comps = []
    while left:
        start = (left & -left).bit_length() - 1
        seen = frontier = 1 << start
        while frontier:
            nxt = 0
            for i in iter_bits(frontier):
                nxt |= g.rows[i]
            frontier = nxt & ~seen
            seen |= frontier
        comps.append(frozenset(g.ids_of(seen)))
        left &= ~seen
    return comps


# canonical forms

@dataclass(frozen=True)
class CanonicalForm:
    """Isomorphism-class certificate.  ``labeling`` lists the vertex ids in
    canonical order and is not part of equality."""

    certificate: bytes
    labeling: tuple[int, ...] = field(compare=False, default=())


def _refine(rows, cells):
    """Equitable refinement of an ordered partition (list of slot lists).

    Cells split by the vector of neighbour counts into every cell; the new
    cells are ordered by (old position, signature) so the result depends only
    on the isomorphism type of (graph, partition).
    """
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        new = []
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                r = rows[v]
                sig = tuple((r & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                new.append(groups[sig])
        if len(new) == len(cells):
            return new
        cells = new


def _certificate_int(rows, order) -> int:
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    cert = 0
    for i, v in enumerate(order):
        r = 0
        for t in iter_bits(rows[v]):
            r |= 1 << pos[t]
        cert = (cert << n) | r
    return cert


def _twins(rows, u, v) -> bool:
    clear = ~((1 << u) | (1 << v))
    return rows[u] & clear == rows[v] & clear


def canonical_form(g: Graph, cap: int | None = None) -> CanonicalForm:
    """Exact isomorphism certificate by individualization and refinement.

    Branches only on the first non-singleton cell and skips vertices that are
    twins of an already explored sibling (the swap is an automorphism).  The
    certificate is the least adjacency bitstring over all leaves.
    """
    cap = DEFAULT_CANON_CAP if cap is None else cap
    n = g.order
    if n > cap:
        raise CapacityError(f"canonical form requested for order {n} > cap {cap}")
    rows = g.rows
    best: list = [None, None]

    def search(cells):
        cells = _refine(rows, cells)
        if len(cells) == n:
            order = [c[0] for c in cells]
            cert = _certificate_int(rows, order)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, order
            return
        t = next(i for i, c in enumerate(cells) if len(c) > 1)
        cell = cells[t]
        tried: list[int] = []
        for v in cell:
            if any(_twins(rows, u, v) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:t] + [[v], rest] + cells[t + 1:])

    if n:
        search([list(range(n))])
        cert, order = best
    else:
        cert, order = 0, []
    nbytes = (n * n + 7) // 8
    blob = n.to_bytes(2, "big") + cert.to_bytes(nbytes, "big")
    return CanonicalForm(blob, tuple(g.vertices[i] for i in order))


def find_isomorphism(g: Graph, h: Graph, cap: int | None = None) -> dict[int, int] | None:
    """A bijection ``V(g) -> V(h)`` preserving adjacency, or ``None``."""
    if g.order != h.order or g.size != h.size:
        return None
    cg, ch = canonical_form(g, cap), canonical_form(h, cap)
    if cg != ch:
        return None
    return dict(zip(cg.labeling, ch.labeling))


def is_isomorphic(g: Graph, h: Graph, cap: int | None = None) -> bool:
    return find_isomorphism(g, h, cap) is not None


def brute_force_isomorphic(g: Graph, h: Graph) -> bool:
    """Reference check over all bijections; only for tiny graphs."""
    from itertools import permutations
    if g.order != h.order or g.size != h.size:
        return False
    ge = {frozenset(e) for e in g.edges()}
    he = {frozenset(e) for e in h.edges()}
    for perm in permutations(h.vertices):
        m = dict(zip(g.vertices, perm))
        if all(frozenset((m[u], m[v])) in he for u, v in ge):
            return True
    return False


def complete_graph(vertices: Iterable[int]) -> Graph:
    vs = list(vertices)
    return Graph(vs, combinations(vs, 2))


def path_graph(n: int, start: int = 0) -> Graph:
    vs = list(range(start, start + n))
    return Graph(vs, zip(vs, vs[1:]))


def cycle_graph(n: int, start: int = 0) -> Graph:
    vs = list(range(start, start + n))
    return Graph(vs, list(zip(vs, vs[1:])) + [(vs[-1], vs[0])])


def empty_graph(vertices: Iterable[int]) -> Graph:
    return Graph(vertices)
