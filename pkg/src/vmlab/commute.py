"""Rewriting a flip followed by a local complementation as a local
complementation followed by a flip, and back."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .core import Graph, is_independent
from .errors import InvariantError, PreconditionError
from .flips import (Flip, apply_flip, clean_flip, flip_classes_of, homogeneity_table,
                    is_compatible_on, is_homogeneous)
from .vminor import local_complement_set


def commute_label(k: int, cls: int, alpha: int) -> int:
    """Index of the composite class ``(cls, alpha)`` in ``[k] x {0,1}^k``;
    bit ``j - 1`` of ``alpha`` is ``alpha(j)``."""
    return (cls - 1) * (1 << k) + alpha + 1


def decode_commute_label(k: int, label: int) -> tuple[int, int]:
    q, alpha = divmod(label - 1, 1 << k)
    return q + 1, alpha


def commute0(g: Graph, f: Flip, i: Iterable[int]) -> Flip:
    """A flip ``F'`` with ``G * I + F' = (G + F) * I``.

    ``I`` must be independent both in ``g`` and in ``g + f``.  Vertices get
    the composite class ``(iota(v), s_v)`` with ``s_v(c) = sum_{z in I}
    E(v, z) tau(c, iota(z))``, and ``tau'`` on composite classes is
    ``tau + zeta + alpha(j) + beta(i)``.

    That table is wrong for a vertex ``z`` of ``I`` whose class is
    self-complementing (``tau(c, c) = 1``): the true row of ``z`` is
    ``tau(iota(u), c)``.  Such a vertex gets its own label, reusing an
    unoccupied composite class when one exists, so the result has at most
    ``k 2^k`` classes unless every composite class is already taken.
    Only occupied labels receive tau entries.
    """
    i = set(i)
    gf = apply_flip(g, f)
    if not is_independent(g, i):
        raise PreconditionError("commute0: I is not independent in G")
    if not is_independent(gf, i):
        raise PreconditionError("commute0: I is not independent in G + F")
    k = f.k
    occ = f.occupied(g.vertices)
    # z in I with tau(c, iota(z)) = 1, per class c
    active = {c: g.mask(z for z in i if f.t(c, f.cls(z))) for c in occ}
    zeta = {(a, b): (active[a] & active[b]).bit_count() & 1 for a in occ for b in occ}
    iota = {}
    special = []
    for s, v in enumerate(g.vertices):
        c = f.cls(v)
        if v in i and f.t(c, c):
            special.append(v)
            continue
        alpha = 0
        row = g.rows[s]
        for d in occ:
            if (row & active[d]).bit_count() & 1:
                alpha |= 1 << (d - 1)
        iota[v] = commute_label(k, c, alpha)
    used = set(iota.values())
    fresh = {}
    nxt = 1
    for v in special:
        while nxt in used:
            nxt += 1
        fresh[nxt] = f.cls(v)
        iota[v] = nxt
        used.add(nxt)
    labels = sorted(used)
    pairs = set()
    for x, la in enumerate(labels):
        for lb in labels[x:]:
            if la in fresh or lb in fresh:
                if la == lb:
                    continue
                ca = fresh[la] if la in fresh else decode_commute_label(k, la)[0]
                cb = fresh[lb] if lb in fresh else decode_commute_label(k, lb)[0]
                bit = f.t(ca, cb)
            else:
                ca, alpha = decode_commute_label(k, la)
                cb, beta = decode_commute_label(k, lb)
                bit = (f.t(ca, cb) ^ zeta[ca, cb] ^ (alpha >> (cb - 1) & 1)
                       ^ (beta >> (ca - 1) & 1))
            if bit:
                pairs.add((la, lb))
    return Flip(max(k * (1 << k), max(labels, default=1)), iota, frozenset(pairs))


def commute0_bound(k: int) -> int:
    """The class-count bound ``k 2^k`` claimed for :func:`commute0`."""
    return k * (1 << k)


def commute0b_report(g: Graph, f: Flip, i: Iterable[int], j: Iterable[int],
                     f2: Flip) -> dict[str, bool]:
    """Every postcondition of :func:`commute0b` evaluated on ``f2``."""
    i, j = set(i), set(j)
    gj = local_complement_set(g, j)
    return {
        "identity": apply_flip(gj, f2) == local_complement_set(apply_flip(g, f), j),
        "j_compatible": is_compatible_on(f, f2, j),
        "rest_compatible": is_compatible_on(f, f2, i - j),
        "i_compatible": is_compatible_on(f, f2, i),
        "rest_homogeneous": is_homogeneous(gj, f2, i - j),
    }


def commute0b_gap(g: Graph, f: Flip, i: Iterable[int], j: Iterable[int]) -> bool:
    """True on inputs where I-compatibility of :func:`commute0b` cannot hold.

    That happens only for a singleton ``J = {z}`` whose class ``c`` still has
    other members in ``I``, when either ``c`` is self-complementing (``z`` then
    needs a label of its own) or ``c`` is a clique inside ``I`` and some class
    flips against ``c`` (the ``sigma`` vector of ``z`` then differs from its
    classmates').
    """
    i, j = set(i), set(j)
    if len(j) != 1:
        return False
    (z,) = j
    c0 = f.cls(z)
    if not any(f.cls(v) == c0 for v in i - j):
        return False
    if f.t(c0, c0):
        return True
    table = homogeneity_table(g, f, i)
    if table is None or not table.get((c0, c0), 0):
        return False
    return any(f.t(c, c0) for c in f.occupied(g.vertices))


def commute0b(g: Graph, f: Flip, i: Iterable[int], j: Iterable[int]) -> Flip:
    """:func:`commute0` on ``J``, with the extra guarantees checked every call.

    Preconditions: ``I`` is F-homogeneous in ``g``; ``J`` is a non-empty
    subset of one F-class of ``I``, independent in ``g`` and ``g + f``.

    Checked: the commutation identity, compatibility with ``f`` on ``J`` and
    on ``I - J``, and F'-homogeneity of ``I - J`` in ``g * J``.  Compatibility
    on all of ``I`` is checked too, except on the inputs singled out by
    :func:`commute0b_gap`, where it provably fails.  A failed check raises
    :class:`InvariantError`.
    """
    i, j = set(i), set(j)
    if not is_homogeneous(g, f, i):
        raise PreconditionError("commute0b: I is not F-homogeneous in G")
    if not j or not j <= i:
        raise PreconditionError("commute0b: J must be a non-empty subset of I")
    if len({f.cls(v) for v in j}) != 1:
        raise PreconditionError("commute0b: J must lie inside a single F-class")
    f2 = commute0(g, f, j)
    report = commute0b_report(g, f, i, j, f2)
    if not report["i_compatible"] and commute0b_gap(g, f, i, j):
        report["i_compatible"] = True
    bad = [name for name, ok in report.items() if not ok]
    if bad:
        raise InvariantError(f"commute0b: failed {', '.join(bad)}")
    return f2


@dataclass(frozen=True)
class CommuteResult:
    partition: tuple[frozenset[int], ...]
    flip: Flip
    actual_class_count: int

    def to_json(self) -> str:
        return json.dumps({"partition": [sorted(p) for p in self.partition],
                           "flip": self.flip.to_text(),
                           "actual_class_count": self.actual_class_count}, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "CommuteResult":
        data = json.loads(text)
        return cls(tuple(frozenset(p) for p in data["partition"]), Flip.from_text(data["flip"]),
                   data["actual_class_count"])


def _result(parts, flip) -> CommuteResult:
    flip = flip.compacted()
    return CommuteResult(tuple(parts), flip, len(flip.occupied()))


def commute_general(g: Graph, f: Flip, i: Iterable[int]) -> CommuteResult:
    """Parts ``J_1..J_p`` of ``I`` (``p <= 2k``) and ``F'`` with
    ``G * I + F' = (G + F) * J_1 * ... * J_p``.

    Classes of ``I`` are handled in increasing class index.  A class that is
    a clique in the current flipped graph is split into its smallest vertex
    followed by the rest.  Intermediate flips are compacted to their occupied
    classes so label spaces stay small.
    """
    i = set(i)
    if not is_independent(g, i):
        raise PreconditionError("commute: I is not independent in G")
    cur_g, cur_f = g, f.restrict(g.vertices).compacted()
    remaining = set(i)
    parts: list[frozenset[int]] = []

    def step(part):
        nonlocal cur_g, cur_f, remaining
        cur_f = commute0b(cur_g, cur_f, remaining, part).compacted()
        cur_g = local_complement_set(cur_g, part)
        parts.append(frozenset(part))
        remaining -= part

    for cls_set in flip_classes_of(f, i):
        part = set(cls_set)
        if is_independent(apply_flip(cur_g, cur_f), part):
            step(part)
        else:
            a1 = min(part)
            step({a1})
            if part - {a1}:
                step(part - {a1})
    if len(parts) > 2 * len(flip_classes_of(f, i)):
        raise InvariantError("commute: more than 2k parts")
    return _result(parts, cur_f)


def commute_corollary_fwd(g: Graph, f: Flip, i: Iterable[int]) -> CommuteResult:
    """Parts and ``F'`` with ``G * I_1 * ... * I_p + F' = (G + F) * I``,
    for ``I`` independent in ``G + F``."""
    i = set(i)
    gf = apply_flip(g, f)
    if not is_independent(gf, i):
        raise PreconditionError("corollary: I is not independent in G + F")
    return commute_general(gf, f, i)


def commute_corollary_bwd(g: Graph, f: Flip, i: Iterable[int]) -> CommuteResult:
    """Parts and ``F'`` with ``(G + F') * I_p * ... * I_1 = G * I + F``
    (note the reversed order), for ``I`` independent in ``G``."""
    i = set(i)
    if not is_independent(g, i):
        raise PreconditionError("corollary: I is not independent in G")
    return commute_general(local_complement_set(g, i), f, i)


def spread_flip(g: Graph, f: Flip, i: Iterable[int]) -> Flip:
    """A ``2k 2^{2k}``-flip ``F'`` with
    ``dist_{G * I + F'} >= dist_{G + F} / 2`` on every pair."""
    i = set(i)
    if not is_independent(g, i):
        raise PreconditionError("spread: I is not independent in G")
    return commute0(g, clean_flip(g, f, i), i)
