"""Buchberger and Mora engines on sparse module vectors.

A vector of a free module ``P^r`` over ``P = K[x_1..x_n]`` is a dict mapping
terms ``(position, exponent)`` to nonzero coefficients of the field.  Ideals
are the rank-one case (every term at position 0).

Global orders use Buchberger's algorithm with full reduction and return the
reduced, monic basis.  Local orders (anti-graded, for the localization at the
origin) use Mora's normal form with ecart bookkeeping; the returned standard
basis is minimized and monic but not tail-reduced.
"""

from __future__ import annotations

import functools
import heapq
import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

log = logging.getLogger(__name__)

Term = Tuple[int, Tuple[int, ...]]
Vector = Dict[Term, Any]

ORDER_NAMES = ("degrevlex", "deglex")


@dataclass(frozen=True)
class TermOrder:
    """Position-over-term order on module terms.

    ``name`` selects the tie-break inside a degree, ``local`` flips the degree
    comparison (lower degree is larger) and ``eliminate`` puts the degree in
    the first ``eliminate`` variables in front of everything else.
    """

    name: str = "degrevlex"
    local: bool = False
    eliminate: int = 0

    def __post_init__(self) -> None:
        if self.name not in ORDER_NAMES:
            raise ValueError(f"unknown term order {self.name!r}")
        if self.local and self.eliminate:
            raise ValueError("elimination orders are global")

    def as_local(self) -> "TermOrder":
        return TermOrder(self.name, local=True)

    def as_global(self) -> "TermOrder":
        return TermOrder(self.name, local=False)

    def key(self, term: Term) -> tuple:
        return _term_key(self, term)


@functools.lru_cache(maxsize=1 << 18)
def _term_key(order: TermOrder, term: Term) -> tuple:
    pos, exp = term
    if order.name == "deglex":
        tail: tuple = exp
    else:
        tail = tuple(-e for e in reversed(exp))
    deg = sum(exp)
    base = (-deg if order.local else deg, tail)
    if order.eliminate:
        base = (sum(exp[: order.eliminate]), base)
    return (-pos, base)


# ---------------------------------------------------------------------------
# Vector arithmetic


def leading_term(v: Vector, order: TermOrder) -> Term:
    return max(v, key=lambda t: _term_key(order, t))


def divides(a: Term, b: Term) -> bool:
    return a[0] == b[0] and all(x <= y for x, y in zip(a[1], b[1]))


def _quotient(b: Term, a: Term) -> Tuple[int, ...]:
    return tuple(y - x for x, y in zip(a[1], b[1]))


def _lcm(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def sub_scaled(h: Vector, c: Any, shift: Sequence[int], g: Vector) -> Vector:
    """Return ``h - c * x^shift * g``."""
    out = dict(h)
    for (pos, exp), cg in g.items():
        t = (pos, tuple(e + s for e, s in zip(exp, shift)))
        val = out.get(t)
        val = -(c * cg) if val is None else val - c * cg
        if val:
            out[t] = val
        else:
            out.pop(t, None)
    return out


def add_vectors(a: Vector, b: Vector) -> Vector:
    out = dict(a)
    for t, c in b.items():
        val = out.get(t)
        val = c if val is None else val + c
        if val:
            out[t] = val
        else:
            out.pop(t, None)
    return out


def scale(v: Vector, c: Any) -> Vector:
    if not c:
        return {}
    return {t: c * x for t, x in v.items()}


def poly_times(p: Dict[Tuple[int, ...], Any], v: Vector) -> Vector:
    """Multiply the vector ``v`` by the polynomial ``p`` (exponent dict)."""
    out: Vector = {}
    for pe, pc in p.items():
        for (pos, exp), c in v.items():
            t = (pos, tuple(a + b for a, b in zip(pe, exp)))
            val = out.get(t)
            val = pc * c if val is None else val + pc * c
            if val:
                out[t] = val
            else:
                out.pop(t, None)
    return out


def shift_positions(v: Vector, offset: int) -> Vector:
    return {(pos + offset, exp): c for (pos, exp), c in v.items()}


def monic(v: Vector, order: TermOrder) -> Vector:
    lt = leading_term(v, order)
    inv = 1 / v[lt] if not _is_one(v[lt]) else None
    if inv is None:
        return dict(v)
    return {t: c * inv for t, c in v.items()}


def _is_one(c: Any) -> bool:
    try:
        return c == 1
    except TypeError:  # pragma: no cover
        return False


def ecart(v: Vector, order: TermOrder) -> int:
    lt = leading_term(v, order)
    return max(sum(exp) for _, exp in v) - sum(lt[1])


def s_vector(f: Vector, g: Vector, order: TermOrder) -> Vector:
    lf, lg = leading_term(f, order), leading_term(g, order)
    m = _lcm(lf[1], lg[1])
    sf = tuple(a - b for a, b in zip(m, lf[1]))
    sg = tuple(a - b for a, b in zip(m, lg[1]))
    left = poly_times({sf: 1 / f[lf]}, f)
    return sub_scaled(left, 1 / g[lg], sg, g)


# ---------------------------------------------------------------------------
# Normal forms


def reduce_full(h: Vector, basis: Sequence[Vector], order: TermOrder, leads: Optional[Sequence[Term]] = None) -> Vector:
    """Fully reduce ``h`` by ``basis`` under a global order."""
    leads = leads if leads is not None else [leading_term(g, order) for g in basis]
    h = dict(h)
    rem: Vector = {}
    while h:
        t = leading_term(h, order)
        c = h[t]
        for g, lg in zip(basis, leads):
            if divides(lg, t):
                h = sub_scaled(h, c / g[lg], _quotient(t, lg), g)
                break
        else:
            rem[t] = c
            del h[t]
    return rem


def mora_normal_form(h: Vector, basis: Sequence[Vector], order: TermOrder) -> Vector:
    """Weak normal form for a local order.

    The result is zero exactly when ``h`` lies in the submodule generated by
    ``basis`` over the localization at the origin, provided ``basis`` is a
    standard basis.
    """
    table = [(g, leading_term(g, order), ecart(g, order)) for g in basis]
    h = dict(h)
    while h:
        t = leading_term(h, order)
        best: Optional[int] = None
        for i, (_, lg, eg) in enumerate(table):
            if divides(lg, t) and (best is None or eg < table[best][2]):
                best = i
        if best is None:
            return h
        g, lg, eg = table[best]
        eh = ecart(h, order)
        if eg > eh:
            table.append((h, t, eh))
        h = sub_scaled(h, h[t] / g[lg], _quotient(t, lg), g)
    return h


def normal_form(h: Vector, basis: Sequence[Vector], order: TermOrder) -> Vector:
    if not h:
        return {}
    if order.local:
        return mora_normal_form(h, basis, order)
    return reduce_full(h, basis, order)


# ---------------------------------------------------------------------------
# Standard bases


@dataclass
class BasisStats:
    pairs: int = 0
    zero_reductions: int = 0
    size: int = 0


def standard_basis(
    gens: Iterable[Vector],
    order: TermOrder,
    *,
    stats: Optional[BasisStats] = None,
) -> List[Vector]:
    """Buchberger's algorithm (global order) or Mora's algorithm (local order)."""
    stats = stats if stats is not None else BasisStats()
    basis: List[Vector] = []
    leads: List[Term] = []
    queue: List[tuple] = []
    counter = itertools.count()
    ideal_case = True

    def push(i: int, j: int) -> None:
        li, lj = leads[i], leads[j]
        if li[0] != lj[0]:
            return
        m = _lcm(li[1], lj[1])
        if ideal_case and not order.local and all(min(a, b) == 0 for a, b in zip(li[1], lj[1])):
            return
        heapq.heappush(queue, (sum(m), next(counter), i, j))

    def insert(v: Vector) -> None:
        v = monic(v, order)
        idx = len(basis)
        basis.append(v)
        leads.append(leading_term(v, order))
        for j in range(idx):
            push(j, idx)

    start = [dict(g) for g in gens if g]
    if any(pos for g in start for pos, _ in g):
        ideal_case = False
    for g in start:
        r = normal_form(g, basis, order)
        if r:
            insert(r)
    while queue:
        _, _, i, j = heapq.heappop(queue)
        stats.pairs += 1
        s = s_vector(basis[i], basis[j], order)
        r = normal_form(s, basis, order)
        if r:
            insert(r)
        else:
            stats.zero_reductions += 1
    result = _minimize(basis, leads, order)
    stats.size = len(result)
    log.debug(
        "standard basis (%s%s): %d elements, %d pairs", order.name, ", local" if order.local else "", len(result), stats.pairs
    )
    return result


def _minimize(basis: List[Vector], leads: List[Term], order: TermOrder) -> List[Vector]:
    keep: List[int] = []
    for i, li in enumerate(leads):
        redundant = False
        for j, lj in enumerate(leads):
            if j == i:
                continue
            if divides(lj, li) and (lj != li or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    kept = [basis[i] for i in keep]
    if not order.local:
        reduced = []
        for idx, g in enumerate(kept):
            others = kept[:idx] + kept[idx + 1 :]
            lt = leading_term(g, order)
            tail = dict(g)
            del tail[lt]
            tail = reduce_full(tail, others, order)
            tail[lt] = g[lt]
            reduced.append(monic(tail, order))
        kept = reduced
    kept.sort(key=lambda v: _term_key(order, leading_term(v, order)))
    return kept


def is_standard_basis(basis: Sequence[Vector], order: TermOrder) -> bool:
    """Buchberger's criterion: every S-vector reduces to zero."""
    for i, j in itertools.combinations(range(len(basis)), 2):
        li, lj = leading_term(basis[i], order), leading_term(basis[j], order)
        if li[0] != lj[0]:
            continue
        if normal_form(s_vector(basis[i], basis[j], order), basis, order):
            return False
    return True


def syzygies(
    columns: Sequence[Vector],
    rank: int,
    order: TermOrder,
    relations: Sequence[Vector] = (),
    nvars: Optional[int] = None,
) -> List[Vector]:
    """Generators of ``{c : sum c_i columns_i in span(relations)}``.

    ``columns`` live in ``P^rank``; the result lives in ``P^len(columns)``.
    """
    if not columns:
        return []
    n = nvars if nvars is not None else _nvars(list(columns) + list(relations))
    zero = (0,) * n
    gens: List[Vector] = []
    for i, col in enumerate(columns):
        v = dict(col)
        v[(rank + i, zero)] = _one_like(col, relations)
        gens.append(v)
    gens.extend(dict(r) for r in relations if r)
    sb = standard_basis(gens, order)
    out = [shift_positions(v, -rank) for v in sb if leading_term(v, order)[0] >= rank]
    log.debug("syzygies of %d columns in rank %d: %d generators", len(columns), rank, len(out))
    return out


def _nvars(vectors: Sequence[Vector]) -> int:
    for v in vectors:
        for _, exp in v:
            return len(exp)
    return 0


def _one_like(col: Vector, relations: Sequence[Vector]) -> Any:
    for v in itertools.chain([col], relations):
        for c in v.values():
            return c / c
    return 1


def monomial_ideal_dimension(leads: Iterable[Tuple[int, ...]], nvars: int) -> int:
    """Krull dimension of ``K[x]/(x^a : a in leads)``; -1 for the unit ideal."""
    supports = [frozenset(i for i, e in enumerate(exp) if e) for exp in leads]
    if any(not s for s in supports):
        return -1
    for size in range(nvars, -1, -1):
        for subset in itertools.combinations(range(nvars), size):
            chosen = frozenset(subset)
            if not any(s <= chosen for s in supports):
                return size
    return 0
