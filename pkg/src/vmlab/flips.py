"""k-flips ``F = (iota, tau)`` and the operations defined on them.

Classes are 1-based.  ``tau`` is stored sparsely as the set of unordered
class pairs ``(i, j)`` with ``i <= j`` and ``tau(i, j) = 1``; a diagonal entry
complements every pair of distinct vertices inside that class.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .core import Graph, is_independent, iter_bits
from .errors import DomainError, PreconditionError, ValidationError


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i <= j else (j, i)


@dataclass(frozen=True, eq=False)
class Flip:
    k: int
    iota: Mapping[int, int]
    tau: frozenset

    def __post_init__(self):
        if self.k < 1:
            raise DomainError("a flip needs at least one class")
        iota = dict(self.iota)
        for v, c in iota.items():
            if not 1 <= c <= self.k:
                raise DomainError(f"vertex {v} mapped to class {c} outside [1, {self.k}]")
        tau = frozenset(_pair(i, j) for i, j in self.tau)
        for i, j in tau:
            if not (1 <= i <= self.k and 1 <= j <= self.k):
                raise DomainError(f"tau entry ({i}, {j}) outside [1, {self.k}]")
        object.__setattr__(self, "iota", iota)
        object.__setattr__(self, "tau", tau)

    @classmethod
    def from_matrix(cls, iota: Mapping[int, int], matrix: Sequence[Sequence[int]]) -> "Flip":
        k = len(matrix)
        pairs = set()
        for i in range(k):
            if len(matrix[i]) != k:
                raise DomainError("tau must be square")
            for j in range(k):
                if matrix[i][j] % 2 != matrix[j][i] % 2:
                    raise DomainError("tau must be symmetric")
                if matrix[i][j] % 2:
                    pairs.add(_pair(i + 1, j + 1))
        return cls(k, iota, frozenset(pairs))

    @classmethod
    def identity(cls, vertices: Iterable[int], k: int = 1) -> "Flip":
        return cls(k, {v: 1 for v in vertices}, frozenset())

    def t(self, i: int, j: int) -> int:
        return 1 if _pair(i, j) in self.tau else 0

    def matrix(self) -> list[list[int]]:
        return [[self.t(i, j) for j in range(1, self.k + 1)] for i in range(1, self.k + 1)]

    def domain(self) -> frozenset[int]:
        return frozenset(self.iota)

    def cls(self, v: int) -> int:
        try:
            return self.iota[v]
        except KeyError:
            raise DomainError(f"vertex {v} outside the flip's domain") from None

    def occupied(self, vertices: Iterable[int] | None = None) -> list[int]:
        vs = self.iota if vertices is None else vertices
        return sorted({self.cls(v) for v in vs})

    def restrict(self, vertices: Iterable[int]) -> "Flip":
        return Flip(self.k, {v: self.cls(v) for v in vertices}, self.tau)

    def is_trivial(self) -> bool:
        return not self.tau

    def compacted(self) -> "Flip":
        """Renumber the occupied classes ``1..m`` in increasing order.

        Applying the result to any graph on the domain gives the same graph;
        used to keep label spaces small when constructions are chained.
        """
        occ = self.occupied()
        ren = {c: i + 1 for i, c in enumerate(occ)}
        tau = {(ren[i], ren[j]) for i, j in self.tau if i in ren and j in ren}
        return Flip(max(len(occ), 1), {v: ren[c] for v, c in self.iota.items()}, frozenset(tau))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Flip):
            return NotImplemented
        return self.k == other.k and self.iota == other.iota and self.tau == other.tau

    __hash__ = None

    # structured text: "k K", "iota N" + N lines "id class", "tau" + k bit rows

    def to_text(self) -> str:
        lines = [f"k {self.k}", f"iota {len(self.iota)}"]
        lines += [f"{v} {c}" for v, c in sorted(self.iota.items())]
        lines.append("tau")
        for i in range(1, self.k + 1):
            lines.append("".join(str(self.t(i, j)) for j in range(i, self.k + 1)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Flip":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        try:
            head, k = lines[0].split()
            head2, n = lines[1].split()
            if head != "k" or head2 != "iota":
                raise ValueError("expected 'k' and 'iota' headers")
            k, n = int(k), int(n)
            iota = {}
            for ln in lines[2:2 + n]:
                v, c = map(int, ln.split())
                iota[v] = c
            if lines[2 + n] != "tau":
                raise ValueError("expected 'tau' header")
            rows = lines[3 + n:]
            if len(rows) != k:
                raise ValueError("tau must have k rows")
            pairs = set()
            for i, row in enumerate(rows, start=1):
                if len(row) != k - i + 1 or set(row) - {"0", "1"}:
                    raise ValueError(f"bad tau row {i}")
                for off, bit in enumerate(row):
                    if bit == "1":
                        pairs.add((i, i + off))
        except (ValueError, IndexError) as exc:
            raise ValidationError(f"malformed flip file: {exc}") from None
        return cls(k, iota, frozenset(pairs))


def _class_masks(g: Graph, f: Flip) -> dict[int, int]:
    masks: dict[int, int] = {}
    for s, v in enumerate(g.vertices):
        c = f.cls(v)
        masks[c] = masks.get(c, 0) | (1 << s)
    return masks


def apply_flip(g: Graph, f: Flip) -> Graph:
    """``E'(x, y) = E(x, y) + tau(iota(x), iota(y))`` on distinct pairs."""
    masks = _class_masks(g, f)
    toggles = {}
    for c in masks:
        m = 0
        for d, md in masks.items():
            if f.t(c, d):
                m |= md
        toggles[c] = m
    rows = []
    for s, v in enumerate(g.vertices):
        rows.append((g.rows[s] ^ toggles[f.iota[v]]) & ~(1 << s))
    return Graph._from_rows(g.vertices, rows, g._labels, g._slot)


def flip_classes_of(f: Flip, x: Iterable[int]) -> list[frozenset[int]]:
    """Non-empty traces ``iota^{-1}(i) & x`` in increasing class order."""
    parts: dict[int, set[int]] = {}
    for v in x:
        parts.setdefault(f.cls(v), set()).add(v)
    return [frozenset(parts[c]) for c in sorted(parts)]


def homogeneity_table(g: Graph, f: Flip, x: Iterable[int]) -> dict[tuple[int, int], int] | None:
    """The symmetric class-pair function determining adjacency inside ``x``,
    or ``None`` when ``x`` is not F-homogeneous."""
    xs = sorted(set(x))
    table: dict[tuple[int, int], int] = {}
    for a in range(len(xs)):
        u = xs[a]
        cu = f.cls(u)
        ru = g.row(u)
        for b in range(a + 1, len(xs)):
            v = xs[b]
            key = _pair(cu, f.cls(v))
            e = ru >> g.slot(v) & 1
            if table.setdefault(key, e) != e:
                return None
    return table


def is_homogeneous(g: Graph, f: Flip, x: Iterable[int]) -> bool:
    return homogeneity_table(g, f, x) is not None


def is_compatible_on(f1: Flip, f2: Flip, x: Iterable[int]) -> bool:
    x = list(x)
    return set(flip_classes_of(f1, x)) == set(flip_classes_of(f2, x))


def clean_flip(g: Graph, f: Flip, i: Iterable[int]) -> Flip:
    """A ``2k``-flip acting like ``f`` except that pairs inside ``i`` are left alone.

    Class ``c`` keeps index ``c`` outside ``i`` and becomes ``c + k`` inside.
    """
    i = set(i)
    if not is_independent(g, i):
        raise PreconditionError("clean_flip needs a set independent in g")
    k = f.k
    iota = {v: c + (k if v in i else 0) for v, c in f.iota.items()}
    pairs = set()
    for a, b in f.tau:
        for sa, sb in product((0, 1), repeat=2):
            if (sa, sb) != (1, 1):
                pairs.add(_pair(a + sa * k, b + sb * k))
    return Flip(2 * k, iota, frozenset(pairs))


def exists_compatible_flip_making_independent(g: Graph, f: Flip, x: Iterable[int]) -> bool:
    """Search all tau'' tables on the classes met by ``x``: is there a flip
    X-compatible with ``f`` after which ``x`` is independent in ``g + f + f''``?

    Exponential in the number of classes met; intended for at most three.
    """
    x = sorted(set(x))
    h = apply_flip(g, f)
    occ = f.occupied(x)
    pairs = [(a, b) for ai, a in enumerate(occ) for b in occ[ai:]]
    xm = h.mask(x)
    for bits in product((0, 1), repeat=len(pairs)):
        tau = frozenset(p for p, bit in zip(pairs, bits) if bit)
        f2 = Flip(f.k, {v: f.cls(v) for v in h.vertices}, tau)
        hh = apply_flip(h, f2)
        if all(not (hh.rows[s] & xm) for s in iter_bits(xm)):
            return True
    return False


def minimum_flip(a: Graph, b: Graph) -> Flip:
    """A flip ``F`` with ``a + F = b`` and the fewest classes.

    Two vertices can share a class exactly when they are twins in the
    difference graph ``a + b`` (same neighbours apart from each other), and
    true and false twin classes never overlap, so the twin classes are an
    optimal partition.
    """
    if a.vertices != b.vertices:
        raise DomainError("both graphs need the same vertex set")
    d = [ra ^ rb for ra, rb in zip(a.rows, b.rows)]
    cls: dict[int, int] = {}
    k = 0
    for s, v in enumerate(a.vertices):
        if v in cls:
            continue
        k += 1
        cls[v] = k
        for t in range(s + 1, a.order):
            w = a.vertices[t]
            if w not in cls and d[s] & ~(1 << t) == d[t] & ~(1 << s):
                cls[w] = k
    pairs = set()
    for s, v in enumerate(a.vertices):
        for t in iter_bits(d[s]):
            pairs.add(_pair(cls[v], cls[a.vertices[t]]))
    return Flip(max(k, 1), cls, frozenset(pairs))
