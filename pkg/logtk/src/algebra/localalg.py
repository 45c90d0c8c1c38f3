"""Presented rings, finitely presented modules and the local tests built on them.

A ``PresentedRing`` is ``K[x_1..x_n]/I`` in one of three modes:

* ``graded``: homogeneous generators, global order, origin is the irrelevant ideal;
* ``affine``: arbitrary generators, global order (used for monoid algebras);
* ``local``: localization at the origin, anti-graded order with Mora normal forms.

Module elements are sparse vectors (see :mod:`groebner`).  An ``FpModule`` is
the cokernel of its relation columns over the ring, i.e.
``R^rank / (span(columns) + I * R^rank)``.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement, PolyRing

from ..utils.errors import NotMinimal, PreconditionError
from . import groebner as gb
from .polys import FieldSpec, format_poly, is_homogeneous, linear_part, make_ring, parse_poly, substitute
from .verdict import Certificate, Status, Verdict, constant_rows, ring_context, vector_to_strings

log = logging.getLogger(__name__)

MODES = ("graded", "affine", "local")


# ---------------------------------------------------------------------------
# Conversions between polynomials and vectors


def poly_to_vector(p: PolyElement, pos: int = 0) -> gb.Vector:
    return {(pos, exp): c for exp, c in p.items()}


def polys_to_vector(entries: Sequence[PolyElement]) -> gb.Vector:
    out: gb.Vector = {}
    for pos, p in enumerate(entries):
        out.update(poly_to_vector(p, pos))
    return out


def component(v: gb.Vector, pos: int) -> Dict[Tuple[int, ...], Any]:
    return {exp: c for (q, exp), c in v.items() if q == pos}


def vector_to_polys(v: gb.Vector, rank: int, ring: PolyRing) -> List[PolyElement]:
    comps: List[Dict[Tuple[int, ...], Any]] = [dict() for _ in range(rank)]
    for (pos, exp), c in v.items():
        comps[pos][exp] = c
    return [ring.from_dict(d) for d in comps]


def drop_position(v: gb.Vector, r: int) -> gb.Vector:
    """Remove the (empty) slot ``r`` and renumber the slots above it."""
    out: gb.Vector = {}
    for (pos, exp), c in v.items():
        if pos == r:
            raise ValueError(f"slot {r} is not empty")
        out[(pos - 1 if pos > r else pos, exp)] = c
    return out


def _unit_exponent(nvars: int, k: int) -> Tuple[int, ...]:
    return tuple(int(i == k) for i in range(nvars))


# ---------------------------------------------------------------------------
# Rings


@dataclass(frozen=True, eq=False)
class PresentedRing:
    """``K[variables] / (ideal_gens)`` in graded, affine or local mode."""

    variables: Tuple[str, ...]
    field: FieldSpec
    ideal_gens: Tuple[PolyElement, ...] = ()
    mode: str = "local"
    order_name: str = "degrevlex"

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown ring mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated variable names in {self.variables}")
        gens = tuple(g for g in self.ideal_gens if g)
        object.__setattr__(self, "ideal_gens", gens)
        if self.mode == "local":
            bad = [g for g in gens if g.const()]
            if bad:
                raise PreconditionError(
                    "PresentedRing", f"generator {format_poly(bad[0], self.variables)} is not in the maximal ideal"
                )
        if self.mode == "graded":
            bad = [g for g in gens if not is_homogeneous(g)]
            if bad:
                raise PreconditionError("PresentedRing", f"generator {format_poly(bad[0], self.variables)} is not homogeneous")

    @classmethod
    def build(
        cls,
        variables: Sequence[str],
        field: FieldSpec,
        relations: Sequence[str] = (),
        mode: str = "local",
        order_name: str = "degrevlex",
    ) -> "PresentedRing":
        names = tuple(variables)
        ring = make_ring(names, field.characteristic)
        gens = tuple(parse_poly(text, ring) for text in relations)
        return cls(names, field, gens, mode, order_name)

    # -- structure ----------------------------------------------------------

    @property
    def poly_ring(self) -> PolyRing:
        return make_ring(self.variables, self.field.characteristic)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_local(self) -> bool:
        return self.mode == "local"

    @functools.cached_property
    def order(self) -> gb.TermOrder:
        return gb.TermOrder(self.order_name, local=self.is_local)

    @functools.cached_property
    def ideal_basis(self) -> Tuple[gb.Vector, ...]:
        return tuple(gb.standard_basis([poly_to_vector(g) for g in self.ideal_gens], self.order))

    def context(self) -> Dict[str, Any]:
        return ring_context(self.variables, self.field, self.is_local, self.order_name)

    def with_ideal(self, extra: Sequence[PolyElement]) -> "PresentedRing":
        return PresentedRing(self.variables, self.field, self.ideal_gens + tuple(extra), self.mode, self.order_name)

    def with_mode(self, mode: str) -> "PresentedRing":
        return PresentedRing(self.variables, self.field, self.ideal_gens, mode, self.order_name)

    def parse(self, text: str) -> PolyElement:
        return parse_poly(text, self.poly_ring)

    def format(self, p: PolyElement) -> str:
        return format_poly(p, self.variables)

    def gen(self, i: int) -> PolyElement:
        return self.poly_ring.gens[i]

    # -- arithmetic modulo the ideal ---------------------------------------

    def reduce(self, p: PolyElement) -> PolyElement:
        nf = gb.normal_form(poly_to_vector(p), self.ideal_basis, self.order)
        return self.poly_ring.from_dict(component(nf, 0))

    def contains(self, p: PolyElement) -> bool:
        """``p`` lies in the ideal (of the localization, in local mode)."""
        return not gb.normal_form(poly_to_vector(p), self.ideal_basis, self.order)

    def equal(self, p: PolyElement, q: PolyElement) -> bool:
        return self.contains(p - q)

    def is_unit_ideal(self) -> bool:
        return self.contains(self.poly_ring.one)

    def relation_vectors(self, rank: int) -> List[gb.Vector]:
        """``I * e_i`` for every slot ``i`` of a free module of the given rank."""
        return [gb.shift_positions(g, i) for i in range(rank) for g in self.ideal_basis]

    def ideal_in_maximal(self) -> bool:
        return all(not g.const() for g in self.ideal_gens)

    def describe(self) -> str:
        rels = ", ".join(self.format(g) for g in self.ideal_gens) or "0"
        return f"{self.field.label}[{', '.join(self.variables)}]/({rels}) [{self.mode}]"

    def __repr__(self) -> str:
        return f"PresentedRing({self.describe()})"


# ---------------------------------------------------------------------------
# Ideals


def groebner_basis(gens: Sequence[PolyElement], order: gb.TermOrder, stats: Optional[gb.BasisStats] = None) -> List[PolyElement]:
    """Reduced Groebner basis (global order) or minimal standard basis (local order)."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = gens[0].ring
    basis = gb.standard_basis([poly_to_vector(g) for g in gens], order, stats=stats)
    return [ring.from_dict(component(v, 0)) for v in basis]


def eliminate(gens: Sequence[PolyElement], count: int, order_name: str = "degrevlex") -> List[PolyElement]:
    """Generators of ``(gens) ∩ K[x_{count+1}, ...]`` (first ``count`` variables eliminated)."""
    order = gb.TermOrder(order_name, eliminate=count)
    basis = groebner_basis(gens, order)
    return [g for g in basis if all(not any(exp[:count]) for exp in g.keys())]


def saturate_by_product(gens: Sequence[PolyElement], ring: PolyRing) -> List[PolyElement]:
    """``(gens) : (x_1 * ... * x_n)^inf`` by eliminating an auxiliary variable."""
    names = tuple(str(s) for s in ring.symbols)
    aux = "_t"
    while aux in names:
        aux += "_"
    big = make_ring((aux,) + names, _characteristic(ring))
    images = list(big.gens[1:])
    lifted = [substitute(g, images, big) for g in gens]
    prod = big.one
    for x in images:
        prod *= x
    lifted.append(big.one - big.gens[0] * prod)
    kept = eliminate(lifted, 1)
    back = [ring.from_dict({exp[1:]: c for exp, c in g.items()}) for g in kept]
    return groebner_basis(back, gb.TermOrder())


def _characteristic(ring: PolyRing) -> int:
    mod = getattr(ring.domain, "mod", None)
    return int(mod) if mod else 0


def krull_dimension(R: PresentedRing) -> int:
    """Dimension of ``R`` (at the origin in local mode); -1 for the zero ring."""
    leads = [gb.leading_term(g, R.order)[1] for g in R.ideal_basis]
    return gb.monomial_ideal_dimension(leads, R.nvars)


def linear_rows(R: PresentedRing) -> List[List[Any]]:
    return [linear_part(g) for g in R.ideal_gens]


def _rank(rows: Sequence[Sequence[Any]], ncols: int, field: FieldSpec) -> int:
    if not rows or not ncols:
        return 0
    return DomainMatrix([list(r) for r in rows], (len(rows), ncols), field.domain).rank()


def embedding_dimension(R: PresentedRing) -> int:
    """``dim_K m/m^2`` for the maximal ideal at the origin."""
    return R.nvars - _rank(linear_rows(R), R.nvars, R.field)


def is_regular_local(R: PresentedRing) -> Verdict:
    if not R.is_local:
        raise PreconditionError("is_regular_local", "ring is not local", "declare the ring with mode = \"local\"")
    cert = Certificate("is_regular_local")
    cert.precondition("local ring at the origin")
    ctx = R.context()
    basis = [vector_to_strings(g, 1, R.variables, R.field) for g in R.ideal_basis]
    cert.claim_standard_basis(ctx, 1, basis, label="ideal")
    for g in R.ideal_gens:
        cert.claim_membership(ctx, 1, basis, [R.format(g)], True, label="generator")
    rows = linear_rows(R)
    rank = _rank(rows, R.nvars, R.field)
    cert.claim_rank(R.field, constant_rows(rows, R.field), R.nvars, rank, label="linear parts")
    leads = [gb.leading_term(g, R.order)[1] for g in R.ideal_basis]
    dim = gb.monomial_ideal_dimension(leads, R.nvars)
    cert.claim_monomial_dimension(leads, R.nvars, dim, label="leading ideal")
    embdim = R.nvars - rank
    cert.note("embedding_dimension", embdim).note("krull_dimension", dim)
    holds = cert.claim_compare(embdim, "==", dim, label="embdim = dim", decisive=True)
    if not holds:
        cert.witness({"embedding_dimension": embdim, "krull_dimension": dim})
    verdict = cert.build(Status.HOLDS if holds else Status.FAILS)
    log.info("is_regular_local %s: %s", R.describe(), verdict.status.value)
    return verdict


# ---------------------------------------------------------------------------
# Nakayama selection


def _maximal_multiples(vectors: Sequence[gb.Vector], nvars: int) -> List[gb.Vector]:
    out = []
    for v in vectors:
        for k in range(nvars):
            out.append(gb.poly_times({_unit_exponent(nvars, k): 1}, v) if v else {})
    return [w for w in out if w]


def submodule_basis(R: PresentedRing, gens: Sequence[gb.Vector], rank: int) -> List[gb.Vector]:
    """Standard basis of ``span(gens) + I * P^rank``."""
    return gb.standard_basis([g for g in gens if g] + R.relation_vectors(rank), R.order)


def in_span(R: PresentedRing, v: gb.Vector, basis: Sequence[gb.Vector]) -> bool:
    return not gb.normal_form(v, basis, R.order)


def nakayama_select(R: PresentedRing, candidates: Sequence[gb.Vector], base: Sequence[gb.Vector], rank: int) -> List[int]:
    """Indices of candidates forming a basis of ``(span(candidates) + U) / (m * span(candidates) + U)``.

    ``U`` is spanned by ``base`` and the ring relations.
    """
    mult = _maximal_multiples(candidates, R.nvars)
    kept: List[int] = []
    for i, c in enumerate(candidates):
        if not c:
            continue
        basis = submodule_basis(R, list(base) + mult + [candidates[j] for j in kept], rank)
        if not in_span(R, c, basis):
            kept.append(i)
    return kept


def minimal_generators(Q: Sequence[PolyElement], R: PresentedRing) -> List[PolyElement]:
    """A minimal generating set of ``(Q)`` in ``R``, chosen greedily from ``Q``.

    >>> R = PresentedRing.build(["x"], FieldSpec())
    >>> [R.format(g) for g in minimal_generators([R.parse("x"), R.parse("x + x^2")], R)]
    ['x']
    """
    for q in Q:
        if q.const():
            raise PreconditionError("minimal_generators", f"{R.format(q)} is not in the maximal ideal")
    vectors = [poly_to_vector(q) for q in Q]
    kept = nakayama_select(R, vectors, [], 1)
    return [Q[i] for i in kept]


# ---------------------------------------------------------------------------
# Koszul homology


@dataclass(frozen=True)
class RegSeqCertificate:
    """Syzygies of a sequence compared against its Koszul relations."""

    elements: Tuple[str, ...]
    syzygies: Tuple[Tuple[str, ...], ...]
    koszul_basis: Tuple[Tuple[str, ...], ...]
    witness: Optional[Tuple[str, ...]] = None

    def as_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "syzygies": [list(s) for s in self.syzygies],
            "koszul_basis_size": len(self.koszul_basis),
            "witness": list(self.witness) if self.witness is not None else None,
        }


def koszul_relations(elements: Sequence[PolyElement]) -> List[gb.Vector]:
    out = []
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            v = gb.add_vectors(poly_to_vector(elements[j], i), gb.scale(poly_to_vector(elements[i], j), -1))
            if v:
                out.append(v)
    return out


def koszul_h1_vanishes(g: Sequence[PolyElement], R: PresentedRing, *, check_minimal: bool = True) -> Verdict:
    """Decide whether the minimal system ``g`` is a regular sequence in the local ring ``R``."""
    if not R.is_local:
        raise PreconditionError("koszul_h1_vanishes", "ring is not local")
    cert = Certificate("koszul_h1_vanishes")
    cert.precondition("local ring at the origin")
    elements = list(g)
    names = tuple(R.format(x) for x in elements)
    cert.note("elements", list(names))
    if not elements:
        cert.note("regular_sequence", RegSeqCertificate((), (), ()).as_dict())
        cert.claim_compare(len(elements), "==", 0, label="empty sequence", decisive=True)
        return cert.build(Status.HOLDS)
    if check_minimal:
        mins = minimal_generators(elements, R)
        if len(mins) < len(elements):
            raise NotMinimal(f"the sequence ({', '.join(names)}) has only {len(mins)} minimal generators")
        cert.precondition("sequence is a minimal generating system")

    m = len(elements)
    ctx = R.context()
    columns = [poly_to_vector(x) for x in elements]
    relations = [dict(v) for v in R.ideal_basis]
    syz = gb.syzygies(columns, 1, R.order, relations=relations, nvars=R.nvars)
    koszul = submodule_basis(R, koszul_relations(elements), m)
    ideal_strings = [vector_to_strings(v, 1, R.variables, R.field) for v in R.ideal_basis]
    koszul_strings = [vector_to_strings(v, m, R.variables, R.field) for v in koszul]
    cert.claim_standard_basis(ctx, m, koszul_strings, label="koszul")
    witness = None
    syz_strings = []
    for s in syz:
        entries = vector_to_strings(s, m, R.variables, R.field)
        syz_strings.append(tuple(entries))
        combo: gb.Vector = {}
        for i, p in enumerate(vector_to_polys(s, m, R.poly_ring)):
            combo = gb.add_vectors(combo, poly_to_vector(p * elements[i]))
        cert.claim_membership(ctx, 1, ideal_strings, [R.format(R.poly_ring.from_dict(component(combo, 0)))], True,
                              label="syzygy")
        nonkoszul = not in_span(R, s, koszul)
        cert.claim_membership(ctx, m, koszul_strings, entries, not nonkoszul, label="koszul membership",
                              decisive=True)
        if nonkoszul and witness is None:
            witness = tuple(entries)
    reg = RegSeqCertificate(names, tuple(syz_strings), tuple(tuple(k) for k in koszul_strings), witness)
    cert.note("regular_sequence", reg.as_dict())
    cert.require(witness is None, "syzygies are koszul")
    if witness is not None:
        cert.witness({"non_koszul_syzygy": list(witness)})
        return cert.build(Status.FAILS)
    return cert.build(Status.HOLDS)


# ---------------------------------------------------------------------------
# Modules


@dataclass(frozen=True, eq=False)
class FpModule:
    """Cokernel of ``columns`` (vectors in ``P^rank``) over ``ring``."""

    ring: PresentedRing
    rank: int
    columns: Tuple[gb.Vector, ...] = ()
    labels: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        cols = tuple(dict(c) for c in self.columns if c)
        for c in cols:
            if any(pos >= self.rank or pos < 0 for pos, _ in c):
                raise ValueError(f"relation column has a slot outside rank {self.rank}")
        object.__setattr__(self, "columns", cols)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"g{i + 1}" for i in range(self.rank)))
        elif len(self.labels) != self.rank:
            raise ValueError(f"{len(self.labels)} labels for rank {self.rank}")

    @classmethod
    def free(cls, ring: PresentedRing, rank: int, labels: Sequence[str] = ()) -> "FpModule":
        return cls(ring, rank, (), tuple(labels))

    @classmethod
    def from_matrix(cls, ring: PresentedRing, rows: Sequence[Sequence[str]], labels: Sequence[str] = ()) -> "FpModule":
        """Presentation from a matrix of polynomial strings (rows = generators, columns = relations)."""
        rank = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = []
        for j in range(ncols):
            cols.append(polys_to_vector([ring.parse(rows[i][j]) for i in range(rank)]))
        return cls(ring, rank, tuple(cols), tuple(labels))

    @functools.cached_property
    def relation_basis(self) -> Tuple[gb.Vector, ...]:
        return tuple(submodule_basis(self.ring, self.columns, self.rank))

    def element_is_zero(self, v: gb.Vector) -> bool:
        return in_span(self.ring, v, self.relation_basis)

    def generator(self, i: int) -> gb.Vector:
        one = self.ring.field.domain.one
        return {(i, (0,) * self.ring.nvars): one}

    # -- constructions ------------------------------------------------------

    def direct_sum(self, other: "FpModule") -> "FpModule":
        if other.ring is not self.ring:
            raise ValueError("direct sum of modules over different rings")
        shifted = tuple(gb.shift_positions(c, self.rank) for c in other.columns)
        return FpModule(self.ring, self.rank + other.rank, self.columns + shifted, self.labels + other.labels)

    def tensor_cyclic(self, ideal: Sequence[PolyElement]) -> "FpModule":
        """``M (x) R/(ideal)`` as a module over ``R``."""
        extra = [poly_to_vector(q, i) for i in range(self.rank) for q in ideal if q]
        return FpModule(self.ring, self.rank, self.columns + tuple(extra), self.labels)

    def minimal_presentation(self) -> "FpModule":
        """Eliminate unit pivots, then drop redundant relations."""
        R = self.ring
        zero = (0,) * R.nvars
        cols = [dict(c) for c in self.columns]
        labels = list(self.labels)
        rank = self.rank
        while True:
            pivot = _unit_pivot(cols, R, zero)
            if pivot is None:
                break
            ci, r = pivot
            c = cols.pop(ci)
            u = component(c, r)
            reduced = []
            for other in cols:
                a = component(other, r)
                v = other
                if a:
                    v = gb.add_vectors(gb.poly_times(u, other), gb.scale(gb.poly_times(a, c), -1))
                if v:
                    reduced.append(drop_position(v, r))
            cols = reduced
            del labels[r]
            rank -= 1
        ring_only = submodule_basis(R, [], rank)
        cols = [c for c in cols if not in_span(R, c, ring_only)]
        if R.is_local or R.mode == "graded":
            keep = nakayama_select(R, cols, [], rank)
            cols = [cols[i] for i in keep]
        else:
            i = 0
            while i < len(cols):
                rest = cols[:i] + cols[i + 1 :]
                if in_span(R, cols[i], submodule_basis(R, rest, rank)):
                    cols = rest
                else:
                    i += 1
        log.debug("minimal presentation: rank %d -> %d, %d relations", self.rank, rank, len(cols))
        return FpModule(R, rank, tuple(cols), tuple(labels))

    # -- invariants at the origin -------------------------------------------

    def _require_origin(self, what: str) -> None:
        if not self.ring.ideal_in_maximal():
            raise PreconditionError(what, "the ring's ideal is not contained in the maximal ideal at the origin")

    def constant_matrix(self) -> List[List[Any]]:
        dom = self.ring.field.domain
        zero = (0,) * self.ring.nvars
        rows = [[dom.zero] * len(self.columns) for _ in range(self.rank)]
        for j, c in enumerate(self.columns):
            for (pos, exp), coeff in c.items():
                if exp == zero:
                    rows[pos][j] = coeff
        return rows

    def residue_dim(self) -> int:
        """``dim_k (M (x) k)``: the number of minimal generators."""
        self._require_origin("residue_dim")
        return self.rank - _rank(self.constant_matrix(), len(self.columns), self.ring.field)

    def hom_dim(self) -> int:
        """``dim_k Hom(M, k)`` from the left null space of the constant matrix."""
        self._require_origin("hom_dim")
        if not self.rank:
            return 0
        if not self.columns:
            return self.rank
        rows = self.constant_matrix()
        dom = self.ring.field.domain
        transposed = DomainMatrix([list(col) for col in zip(*rows)], (len(self.columns), self.rank), dom)
        return transposed.nullspace().shape[0]

    def is_free(self) -> bool:
        return not self.minimal_presentation().columns

    def is_zero(self) -> bool:
        return self.minimal_presentation().rank == 0 if self.ring.is_local else all(
            self.element_is_zero(self.generator(i)) for i in range(self.rank)
        )

    def relation_strings(self) -> List[List[str]]:
        return [vector_to_strings(c, self.rank, self.ring.variables, self.ring.field) for c in self.columns]

    def as_dict(self) -> dict:
        return {"rank": self.rank, "labels": list(self.labels), "relations": self.relation_strings()}

    def describe(self) -> str:
        if not self.rank:
            return "0"
        gens = ", ".join(self.labels)
        if not self.columns:
            return f"free on {gens}"
        rels = "; ".join("(" + ", ".join(r) + ")" for r in self.relation_strings())
        return f"<{gens} | {rels}>"


def _unit_pivot(cols: Sequence[gb.Vector], R: PresentedRing, zero: Tuple[int, ...]) -> Optional[Tuple[int, int]]:
    for ci, c in enumerate(cols):
        slots = sorted({pos for pos, _ in c})
        for r in slots:
            comp = component(c, r)
            if zero not in comp:
                continue
            if R.is_local or len(comp) == 1:
                return ci, r
    return None


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """Module homomorphism given by the images of the source generators."""

    source: FpModule
    target: FpModule
    images: Tuple[gb.Vector, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.source.rank:
            raise ValueError(f"{len(self.images)} images for {self.source.rank} generators")
        if self.source.ring is not self.target.ring:
            raise ValueError("module maps must stay over one ring")

    @property
    def ring(self) -> PresentedRing:
        return self.source.ring

    def apply(self, v: gb.Vector) -> gb.Vector:
        out: gb.Vector = {}
        for pos in sorted({p for p, _ in v}):
            out = gb.add_vectors(out, gb.poly_times(component(v, pos), self.images[pos]))
        return out

    def is_well_defined(self) -> bool:
        return all(self.target.element_is_zero(self.apply(c)) for c in self.source.columns)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``other`` after ``self``."""
        return ModuleMap(self.source, other.target, tuple(other.apply(v) for v in self.images))

    def image_basis(self) -> List[gb.Vector]:
        return submodule_basis(self.ring, list(self.images) + list(self.target.columns), self.target.rank)

    def is_surjective(self) -> bool:
        basis = self.image_basis()
        return all(in_span(self.ring, self.target.generator(j), basis) for j in range(self.target.rank))

    def kernel(self) -> List[gb.Vector]:
        """Generators (in source coordinates) of the kernel."""
        R = self.ring
        if not self.source.rank:
            return []
        images = [dict(v) if v else {} for v in self.images]
        relations = list(self.target.columns) + R.relation_vectors(self.target.rank)
        nonzero = [i for i, v in enumerate(images) if v]
        if not nonzero:
            return [self.source.generator(i) for i in range(self.source.rank)]
        syz = gb.syzygies([images[i] for i in nonzero], self.target.rank, R.order, relations=relations, nvars=R.nvars)
        out = [{(nonzero[pos], exp): c for (pos, exp), c in s.items()} for s in syz]
        out += [self.source.generator(i) for i, v in enumerate(images) if not v]
        return out

    def is_injective(self) -> bool:
        return all(self.source.element_is_zero(k) for k in self.kernel())

    def is_isomorphism(self) -> bool:
        return self.is_well_defined() and self.is_surjective() and self.is_injective()


@dataclass(frozen=True)
class ExactnessReport:
    composition_zero: bool
    exact: bool
    homology_dim: int
    witness: Optional[List[str]] = None

    def as_dict(self) -> dict:
        return {"composition_zero": self.composition_zero, "exact": self.exact, "homology_dim": self.homology_dim,
                "witness": self.witness}


def check_exact(f: ModuleMap, g: ModuleMap) -> ExactnessReport:
    """Exactness of ``M --f--> N --g--> Q`` at ``N``."""
    if f.target is not g.source:
        raise ValueError("maps are not composable")
    R = f.ring
    middle = f.target
    composition_zero = all(g.target.element_is_zero(g.apply(v)) for v in f.images)
    cycles = [z for z in g.kernel() if not middle.element_is_zero(z)]
    boundaries = list(f.images) + list(middle.columns)
    basis = submodule_basis(R, boundaries, middle.rank)
    outside = [z for z in cycles if not in_span(R, z, basis)]
    witness = vector_to_strings(outside[0], middle.rank, R.variables, R.field) if outside else None
    dim = len(nakayama_select(R, outside, boundaries, middle.rank)) if outside else 0
    return ExactnessReport(composition_zero, not outside, dim, witness)


# ---------------------------------------------------------------------------
# Tor against a cyclic module


def map_vector(v: gb.Vector, rank: int, source: PresentedRing, target: PresentedRing, images: Sequence[PolyElement]) -> gb.Vector:
    polys = vector_to_polys(v, rank, source.poly_ring)
    return polys_to_vector([substitute(p, images, target.poly_ring) for p in polys])


def free_resolution(R: PresentedRing, gens: Sequence[PolyElement], steps: int) -> List[Tuple[int, List[gb.Vector]]]:
    """Differentials ``d_1..d_steps`` of a free resolution of ``R/(gens)`` over ``R``.

    Each entry is ``(target_rank, columns)``.
    """
    cols = [poly_to_vector(g) for g in gens if g]
    out = [(1, cols)]
    while len(out) < steps:
        prev_rank, prev_cols = out[-1]
        if not prev_cols:
            out.append((0, []))
            continue
        nxt = gb.syzygies(prev_cols, prev_rank, R.order, relations=R.relation_vectors(prev_rank), nvars=R.nvars)
        out.append((len(prev_cols), nxt))
    return out


@dataclass(frozen=True)
class TorResult:
    degree: int
    module: FpModule
    cycles: Tuple[gb.Vector, ...]
    boundary_basis: Tuple[gb.Vector, ...]
    free_rank: int

    @property
    def vanishes(self) -> bool:
        return self.module.rank == 0

    @property
    def dimension(self) -> int:
        return self.module.residue_dim()

    def record(self, cert: Certificate, label: str, decisive: bool = True) -> None:
        A = self.module.ring
        ctx = A.context()
        basis = [vector_to_strings(b, self.free_rank, A.variables, A.field) for b in self.boundary_basis]
        cert.claim_standard_basis(ctx, self.free_rank, basis, label=f"{label} boundaries")
        for z in self.cycles:
            zero = in_span(A, z, self.boundary_basis)
            cert.claim_membership(ctx, self.free_rank, basis, vector_to_strings(z, self.free_rank, A.variables, A.field),
                                  zero, label=f"{label} cycle", decisive=decisive)
        cert.claim_compare(self.module.rank, "==", 0, label=f"{label} vanishes", decisive=decisive)
        cert.note(label, {"degree": self.degree, "dimension": self.dimension, "presentation": self.module.as_dict()})


def tor_cyclic_data(
    R: PresentedRing,
    A: PresentedRing,
    images: Sequence[PolyElement],
    Iprime: Sequence[PolyElement],
    n: int = 1,
) -> TorResult:
    """``Tor_n^R(A, R/Iprime)`` with the cycles and boundaries that present it."""
    if n not in (1, 2):
        raise ValueError("only Tor_1 and Tor_2 are supported")
    if len(images) != R.nvars:
        raise ValueError(f"{len(images)} images for {R.nvars} variables")
    if any(img.ring != A.poly_ring for img in images):
        raise ValueError("images must be polynomials of the target ring")
    resolution = free_resolution(R, Iprime, n + 1)
    target_rank, d_n = resolution[n - 1]
    free_rank = len(d_n)
    _, d_next = resolution[n]
    if not free_rank:
        return TorResult(n, FpModule(A, 0), (), (), 0)
    mapped = [map_vector(c, target_rank, R, A, images) for c in d_n]
    boundaries = [map_vector(c, free_rank, R, A, images) for c in d_next]
    boundaries = [b for b in boundaries if b]
    kernel = ModuleMap(FpModule.free(A, free_rank), FpModule.free(A, target_rank), tuple(mapped)).kernel()
    boundary_basis = submodule_basis(A, boundaries, free_rank)
    cycles = [z for z in kernel if z]
    if not cycles:
        return TorResult(n, FpModule(A, 0), (), tuple(boundary_basis), free_rank)
    m = len(cycles)
    syz = gb.syzygies(cycles + boundaries, free_rank, A.order, relations=A.relation_vectors(free_rank), nvars=A.nvars)
    rels = []
    for s in syz:
        restricted = {(pos, exp): c for (pos, exp), c in s.items() if pos < m}
        if restricted:
            rels.append(restricted)
    module = FpModule(A, m, tuple(rels), tuple(f"z{i + 1}" for i in range(m))).minimal_presentation()
    log.debug("Tor_%d over %s: %s", n, R.describe(), module.describe())
    return TorResult(n, module, tuple(cycles), tuple(boundary_basis), free_rank)


def tor_cyclic(
    R: PresentedRing,
    A: PresentedRing,
    images: Sequence[PolyElement],
    Iprime: Sequence[PolyElement],
    n: int = 1,
) -> FpModule:
    """``Tor_n^R(A, R/Iprime)`` as a minimal module over ``A``."""
    return tor_cyclic_data(R, A, images, Iprime, n).module
