"""Prelog rings: a local presented ring, a monoid and a multiplicative map between them."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from ..utils.errors import BudgetExceeded, IllFormedMap, PreconditionError
from .localalg import PresentedRing
from .monoids import (
    Exp,
    FinMonoid,
    MonoidHom,
    MonoidIdeal,
    exponents_of_degree,
    pushout as monoid_pushout,
    quotient_by_ideal,
)
from .polys import FieldSpec, make_ring, substitute
from .verdict import Certificate, Status, Verdict, vector_to_strings

log = logging.getLogger(__name__)


def _power_product(factors: Sequence[PolyElement], e: Sequence[int], one: PolyElement) -> PolyElement:
    out = one
    for f, k in zip(factors, e):
        if k:
            out = out * f**k
    return out


@dataclass(frozen=True, eq=False)
class PrelogRing:
    ring: PresentedRing
    monoid: FinMonoid
    alpha: Tuple[PolyElement, ...]

    def __post_init__(self) -> None:
        if not self.ring.is_local:
            raise PreconditionError("PrelogRing", "the ring must be local", "declare the ring with mode = \"local\"")
        if len(self.alpha) != self.monoid.num_generators:
            raise IllFormedMap(f"{len(self.alpha)} images for {self.monoid.num_generators} monoid generators")
        poly_ring = self.ring.poly_ring
        if any(a.ring != poly_ring for a in self.alpha):
            raise IllFormedMap("structure map images must live in the ring's polynomial ring")

    @classmethod
    def from_names(cls, ring: PresentedRing, monoid: FinMonoid, alpha: Dict[str, str]) -> "PrelogRing":
        missing = [n for n in monoid.names if n not in alpha]
        if missing:
            raise IllFormedMap(f"no image for monoid generator(s) {', '.join(missing)}")
        extra = [n for n in alpha if n not in monoid.names]
        if extra:
            raise IllFormedMap(f"unknown monoid generator(s) {', '.join(extra)}")
        return cls(ring, monoid, tuple(ring.parse(alpha[n]) for n in monoid.names))

    @classmethod
    def of_monoid(cls, monoid: FinMonoid, field: FieldSpec) -> "PrelogRing":
        """``K[M]`` localized at the origin with its tautological structure map."""
        algebra = monoid.algebra(field)
        ring = algebra.with_mode("local")
        return cls(ring, monoid, tuple(ring.poly_ring.gens))

    @property
    def residue_field(self) -> FieldSpec:
        return self.ring.field

    def alpha_of(self, e: Sequence[int]) -> PolyElement:
        return _power_product(self.alpha, e, self.ring.poly_ring.one)

    def maximal_ideal(self) -> List[PolyElement]:
        return list(self.ring.poly_ring.gens)

    def alpha_strings(self) -> Dict[str, str]:
        return {name: self.ring.format(a) for name, a in zip(self.monoid.names, self.alpha)}

    def describe(self) -> str:
        images = ", ".join(f"{k} -> {v}" for k, v in self.alpha_strings().items())
        return f"({self.ring.describe()}, {self.monoid.describe()}, {images})"


def validate(P: PrelogRing) -> Verdict:
    """Multiplicativity on every relation and ``alpha(m_M)`` inside the maximal ideal."""
    cert = Certificate("validate")
    R, M = P.ring, P.monoid
    ctx = R.context()
    basis = [vector_to_strings(v, 1, R.variables, R.field) for v in R.ideal_basis]
    maximal = [[name] for name in R.variables]
    witness = None
    pairs = [(a, b, M.format_relation((a, b))) for a, b in M.relations]
    if M.is_pointed:
        first = M.pointed_ideal[0]
        pairs += [(g, first, f"{M.format_element(g)} = {M.format_element(first)} (absorbing)") for g in M.pointed_ideal[1:]]
        pairs += [(tuple(x + int(i == k) for i, x in enumerate(first)), first, f"{M.format_element(first)} + {name} = "
                   f"{M.format_element(first)} (absorbing)") for k, name in enumerate(M.names)]
    for a, b, label in pairs:
        diff = P.alpha_of(a) - P.alpha_of(b)
        ok = R.contains(diff)
        cert.claim_membership(ctx, 1, basis, [R.format(diff)], ok, label=f"relation {label}", decisive=True)
        if not ok and witness is None:
            witness = {"relation": label, "difference": R.format(R.reduce(diff))}
    for i, name in enumerate(M.names):
        if M.is_unit(M.generator(i)):
            continue
        image = P.alpha[i]
        inside = not image.const()
        cert.claim_membership(ctx, 1, maximal, [R.format(image)], inside, label=f"locality {name}",
                              decisive=True)
        if not inside and witness is None:
            witness = {"generator": name, "image": R.format(image), "reason": "non-unit generator maps to a unit"}
    cert.note("relations_checked", len(pairs))
    cert.require(witness is None, "relations and locality")
    if witness is not None:
        cert.witness(witness)
        verdict = cert.build(Status.FAILS)
    else:
        verdict = cert.build(Status.HOLDS)
    log.info("validate %s: %s", P.describe(), verdict.status.value)
    return verdict


@dataclass(frozen=True)
class PreimageResult:
    """Generators of ``alpha^{-1}(J)`` found up to ``bound`` and whether the search closed."""

    ideal: MonoidIdeal
    complete: bool
    bound: int
    classes_examined: int

    @property
    def is_empty(self) -> bool:
        return self.ideal.is_empty


def _require_proper_in_maximal(procedure: str, R: PresentedRing, J: Sequence[PolyElement]) -> None:
    for q in J:
        if q.const():
            raise PreconditionError(procedure, f"{R.format(q)} is not in the maximal ideal")


def monoid_preimage_ideal(
    P: PrelogRing,
    J: Sequence[PolyElement],
    degree_bound: int = 8,
    class_budget: int = 5_000,
) -> PreimageResult:
    """Bounded search for ``{m in M : alpha(m) in J}``.

    Complete when the layer of degree ``degree_bound + 1`` yields no new generator.
    """
    R, M = P.ring, P.monoid
    _require_proper_in_maximal("monoid_preimage_ideal", R, J)
    B = R.with_ideal(J)
    found: List[Exp] = []
    seen = set()
    examined = 0
    complete = True
    for degree in range(degree_bound + 2):
        for e in exponents_of_degree(M.num_generators, degree):
            nf = M.normal_form(e)
            if nf in seen:
                continue
            seen.add(nf)
            examined += 1
            if examined > class_budget:
                raise BudgetExceeded(f"more than {class_budget} monoid classes examined")
            if found and M.in_ideal(MonoidIdeal(tuple(found)), e):
                continue
            if B.contains(P.alpha_of(e)):
                if degree > degree_bound:
                    complete = False
                    break
                found.append(e)
        if not complete:
            break
    result = PreimageResult(MonoidIdeal(tuple(found)), complete, degree_bound, examined)
    log.debug("preimage ideal: %s (complete=%s)", [M.format_element(g) for g in found], complete)
    return result


@dataclass(frozen=True)
class LogIdeal:
    generators: Tuple[PolyElement, ...]
    preimage: PreimageResult

    @property
    def complete(self) -> bool:
        return self.preimage.complete


def log_ideal(P: PrelogRing, J: Sequence[PolyElement], degree_bound: int = 8, class_budget: int = 5_000) -> LogIdeal:
    """``I = (alpha(M) ∩ J)``, generated by the images of the preimage generators."""
    pre = monoid_preimage_ideal(P, J, degree_bound, class_budget)
    return LogIdeal(tuple(P.alpha_of(g) for g in pre.ideal.generators), pre)


def quotient_prelog(P: PrelogRing, J: Sequence[PolyElement], degree_bound: int = 8, class_budget: int = 5_000) -> PrelogRing:
    """``(A/J, M/alpha^{-1}(J))`` with the induced structure map."""
    pre = monoid_preimage_ideal(P, J, degree_bound, class_budget)
    if not pre.complete:
        raise PreconditionError(
            "quotient_prelog", f"monoid preimage incomplete at degree bound {degree_bound}", "raise --degree-bound"
        )
    B = P.ring.with_ideal(J)
    N = quotient_by_ideal(P.monoid, pre.ideal)
    return PrelogRing(B, N, P.alpha)


def permute_generators(P: PrelogRing, perm: Sequence[int]) -> PrelogRing:
    """Reorder the monoid generators (``perm[i]`` is the old index of the new ``i``-th generator)."""
    M = P.monoid
    names = tuple(M.names[i] for i in perm)

    def move(e: Sequence[int]) -> Exp:
        return tuple(e[i] for i in perm)

    N = FinMonoid(names, tuple((move(a), move(b)) for a, b in M.relations), tuple(move(g) for g in M.pointed_ideal))
    return PrelogRing(P.ring, N, tuple(P.alpha[i] for i in perm))


# ---------------------------------------------------------------------------
# Homomorphisms


@dataclass(frozen=True, eq=False)
class PrelogHom:
    source: PrelogRing
    target: PrelogRing
    ring_images: Tuple[PolyElement, ...]
    monoid_map: MonoidHom

    def __post_init__(self) -> None:
        if len(self.ring_images) != self.source.ring.nvars:
            raise IllFormedMap(f"{len(self.ring_images)} images for {self.source.ring.nvars} ring variables")
        if self.monoid_map.source is not self.source.monoid or self.monoid_map.target is not self.target.monoid:
            raise IllFormedMap("monoid map does not connect the two monoids")

    @classmethod
    def build(cls, source: PrelogRing, target: PrelogRing, ring_images: Dict[str, str],
              monoid_images: Dict[str, str]) -> "PrelogHom":
        missing = [v for v in source.ring.variables if v not in ring_images]
        if missing:
            raise IllFormedMap(f"no image for ring variable(s) {', '.join(missing)}")
        images = tuple(target.ring.parse(ring_images[v]) for v in source.ring.variables)
        h = MonoidHom.parse(source.monoid, target.monoid, monoid_images)
        return cls(source, target, images, h)

    @classmethod
    def identity(cls, P: PrelogRing) -> "PrelogHom":
        return cls(P, P, tuple(P.ring.poly_ring.gens), MonoidHom.identity(P.monoid))

    def map_poly(self, p: PolyElement) -> PolyElement:
        return substitute(p, self.ring_images, self.target.ring.poly_ring)

    def compose(self, other: "PrelogHom") -> "PrelogHom":
        """``other`` after ``self``."""
        images = tuple(other.map_poly(p) for p in self.ring_images)
        return PrelogHom(self.source, other.target, images, self.monoid_map.compose(other.monoid_map))


def validate_hom(f: PrelogHom) -> Verdict:
    """Ring map well defined and local, monoid map well defined, square commutes."""
    cert = Certificate("validate_hom")
    S, T = f.source, f.target
    witness: Optional[dict] = None
    for g in S.ring.ideal_gens:
        if not T.ring.contains(f.map_poly(g)):
            witness = witness or {"ring_relation": S.ring.format(g), "image": T.ring.format(f.map_poly(g))}
    for v, img in zip(S.ring.variables, f.ring_images):
        if img.const():
            witness = witness or {"variable": v, "image": T.ring.format(img), "reason": "map is not local"}
    if not f.monoid_map.is_well_defined():
        witness = witness or {"monoid_map": "does not respect relations"}
    for i, name in enumerate(S.monoid.names):
        left = f.map_poly(S.alpha[i])
        right = T.alpha_of(f.monoid_map.images[i])
        if not T.ring.equal(left, right):
            witness = witness or {"square": name, "ring_side": T.ring.format(left), "monoid_side": T.ring.format(right)}
    cert.note("generators_checked", S.monoid.num_generators)
    cert.require(witness is None, "morphism well defined")
    if witness is not None:
        cert.witness(witness)
        return cert.build(Status.FAILS)
    return cert.build(Status.HOLDS)


@dataclass(frozen=True)
class PrelogPushout:
    prelog: PrelogRing
    left: PrelogHom
    right: PrelogHom


def _fresh(name: str, taken: List[str]) -> str:
    while name in taken:
        name += "_"
    return name


def pushout(f1: PrelogHom, f2: PrelogHom) -> PrelogPushout:
    """``B1 (x)_{A} A2`` with the monoid pushout, for ``f1: P0 -> P1`` and ``f2: P0 -> P2``."""
    if f1.source is not f2.source:
        raise IllFormedMap("pushout legs must share their source")
    P1, P2 = f1.target, f2.target
    names = list(P2.ring.variables)
    renamed = []
    for v in P1.ring.variables:
        new = _fresh(v, names)
        names.append(new)
        renamed.append(new)
    field = P1.ring.field
    ring = make_ring(tuple(names), field.characteristic)
    n2 = P2.ring.nvars
    into2 = list(ring.gens[:n2])
    into1 = list(ring.gens[n2:])
    gens = [substitute(g, into2, ring) for g in P2.ring.ideal_gens]
    gens += [substitute(g, into1, ring) for g in P1.ring.ideal_gens]
    for a1, a2 in zip(f1.ring_images, f2.ring_images):
        diff = substitute(a2, into2, ring) - substitute(a1, into1, ring)
        if diff:
            gens.append(diff)
    R = PresentedRing(tuple(names), field, tuple(gens), "local", P1.ring.order_name)
    mp = monoid_pushout(f1.monoid_map, f2.monoid_map)
    alpha = tuple(substitute(a, into1, ring) for a in P1.alpha) + tuple(substitute(a, into2, ring) for a in P2.alpha)
    Q = PrelogRing(R, mp.monoid, alpha)
    left = PrelogHom(P1, Q, tuple(into1), mp.left)
    right = PrelogHom(P2, Q, tuple(into2), mp.right)
    return PrelogPushout(Q, left, right)
