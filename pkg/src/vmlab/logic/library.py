"""Shipped formula files, ladder and independence witnesses, and the
permutation-to-two-orders transduction."""

from __future__ import annotations

from importlib import resources
from itertools import permutations, product
from typing import Sequence

from ..errors import CapacityError, DomainError, PreconditionError
from ..families import _check_permutation, permutation_graph
from .evaluate import Evaluator, as_model
from .syntax import Atom, Definition, Formula, Signature, parse_definitions

LADDER_CAP = 8
INDEPENDENCE_CAP = 3


def formula_source(name: str) -> str:
    return resources.files("vmlab.logic").joinpath("formulas", f"{name}.fo").read_text()


def load_formulas(name: str, predicates: Sequence[str] = ()) -> dict[str, Definition]:
    """Parse one of the shipped files (``split_interval`` or ``permutation``)."""
    return parse_definitions(formula_source(name), Signature({"E"}, set(predicates)))


def _side_vars(phi: Formula, x: str, y: str) -> None:
    extra = phi.free() - {x, y}
    if extra:
        raise PreconditionError(f"formula has free variables {sorted(extra)} besides {x}, {y}")


def _truth_table(ev: Evaluator, phi: Formula, x: str, y: str):
    dom = ev.model.domain
    return {(a, b): ev.holds(phi, {x: a, y: b}) for a in dom for b in dom}


def ladder(s, phi: Formula, cap: int, definitions=None, x: str = "x", y: str = "y",
           disjoint: bool = False, limit: int = LADDER_CAP) -> list[tuple]:
    """A longest ladder ``[(a_1, b_1), ..., (a_n, b_n)]`` with ``n <= cap``,
    ``phi(a_i, b_j)`` iff ``i <= j``.  The a's are pairwise distinct, as are
    the b's; with ``disjoint`` no element may serve on both sides."""
    if cap > limit:
        raise CapacityError(f"ladder cap {cap} exceeds the configured limit {limit}")
    _side_vars(phi, x, y)
    ev = Evaluator(s, definitions)
    t = _truth_table(ev, phi, x, y)
    dom = ev.model.domain
    best: list = []

    def extend(cur):
        nonlocal best
        if len(cur) > len(best):
            best = list(cur)
        if len(best) >= cap:
            return True
        used_a = {a for a, _ in cur}
        used_b = {b for _, b in cur}
        used = used_a | used_b
        for a in dom:
            if a in used_a or (disjoint and a in used):
                continue
            if any(t[a, bi] for _, bi in cur):
                continue
            for b in dom:
                if b in used_b or (disjoint and (b in used or b == a)):
                    continue
                if not t[a, b] or not all(t[ai, b] for ai, _ in cur):
                    continue
                cur.append((a, b))
                if extend(cur):
                    return True
                cur.pop()
        return False

    if cap > 0:
        extend([])
    return best


def ladder_index(s, phi: Formula, cap: int, definitions=None, x: str = "x", y: str = "y",
                 disjoint: bool = False, limit: int = LADDER_CAP) -> int:
    return len(ladder(s, phi, cap, definitions, x, y, disjoint, limit))


def independence_witness(s, phi: Formula, n: int, definitions=None, x: str = "x", y: str = "y",
                         disjoint: bool = False):
    """``(a, b)`` with ``a`` a tuple of ``n`` distinct elements and ``b`` a map
    from every subset ``J`` of ``{1..n}`` to an element, such that
    ``phi(a_i, b_J)`` iff ``i in J``; ``None`` when no such family exists.
    The lexicographically least ``a`` (in domain order) is returned."""
    if n > INDEPENDENCE_CAP:
        raise CapacityError(f"independence witness size {n} exceeds cap {INDEPENDENCE_CAP}")
    if n < 0:
        raise DomainError("n must be non-negative")
    _side_vars(phi, x, y)
    ev = Evaluator(s, definitions)
    t = _truth_table(ev, phi, x, y)
    dom = ev.model.domain
    for a in permutations(dom, n):
        found = {}
        for b in dom:
            if disjoint and b in a:
                continue
            j = frozenset(i + 1 for i in range(n) if t[a[i], b])
            found.setdefault(j, b)
        if len(found) == 1 << n:
            return a, found
    return None


def _hat(sigma: Sequence[int]) -> list[int]:
    """Interleave ``n + i`` at position ``2i - 1`` and ``sigma(i)`` at ``2i``."""
    n = len(sigma)
    out = []
    for i in range(1, n + 1):
        out += [n + i, sigma[i - 1]]
    return out


def permutation_orders(sigma: Sequence[int]) -> tuple[list[int], list[int]]:
    """Vertices of ``A`` (positions carrying ``sigma`` values) sorted by the
    two orders defined by ``lt1`` and ``lt2`` on the marked permutation graph."""
    sigma = _check_permutation(sigma)
    n = len(sigma)
    g = permutation_graph(_hat(sigma))
    a_side = [2 * i for i in range(1, n + 1)]
    b_side = [2 * i - 1 for i in range(1, n + 1)]
    defs = load_formulas("permutation", ("A", "B"))
    ev = Evaluator(as_model(g, {"A": a_side, "B": b_side}), defs)
    orders = []
    for name in ("lt1", "lt2"):
        atom = Atom(name, ("x", "y"))
        below = {u: sum(ev.holds(atom, {"x": v, "y": u}) for v in a_side) for u in a_side}
        seq = sorted(a_side, key=lambda u: below[u])
        if sorted(below.values()) != list(range(1, n + 1)):
            raise PreconditionError(f"{name} is not a linear order on A")
        orders.append(seq)
    return orders[0], orders[1]


def permutation_roundtrip(sigma: Sequence[int]) -> bool:
    """True iff the two orders on ``A`` form a structure isomorphic to
    ``([n], <, <_sigma)``, i.e. reading ``A`` along the first order and
    recording ranks in the second gives back ``sigma``."""
    sigma = _check_permutation(sigma)
    first, second = permutation_orders(sigma)
    rank = {u: r for r, u in enumerate(second, start=1)}
    return [rank[u] for u in first] == list(sigma)
