"""Finitely presented commutative monoids.

A monoid is a list of named generators plus relations ``a = b`` between
exponent rows (additive notation).  Equality of elements is the congruence
the relations generate, decided by normal forms in the monoid algebra
``K[x]/I_M`` where ``I_M = (x^a - x^b)``.  Pointed quotients ``M/I`` keep the
generators of ``I``; their algebra adds the difference ideal of ``I``.
"""

from __future__ import annotations

import functools
import itertools
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import Matrix, Rational, floor, gcd, ilcm

from ..utils.errors import (
    BudgetExceeded,
    IllFormedMap,
    ImproperIdeal,
    NotIntegral,
    NotSurjective,
    PointedMonoid,
    TorsionCompletion,
)
from . import groebner as gb
from .abgroups import AbGroupMap, FgAbGroup, kernel_cokernel, smith_normal_form
from .localalg import PresentedRing, poly_to_vector, saturate_by_product
from .polys import RATIONALS, FieldSpec, make_ring, monomial
from .verdict import Certificate, Status, Verdict, ring_context, vector_to_strings

log = logging.getLogger(__name__)

Exp = Tuple[int, ...]
Relation = Tuple[Exp, Exp]

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_TERM_RE = re.compile(r"^\s*(?:(\d+)\s*\*\s*)?([A-Za-z_][A-Za-z0-9_]*)\s*$")


def add(a: Sequence[int], b: Sequence[int]) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def scale_exp(a: Sequence[int], k: int) -> Exp:
    return tuple(k * x for x in a)


def unit_vector(n: int, i: int) -> Exp:
    return tuple(int(j == i) for j in range(n))


def binomial_pair(poly) -> Relation:
    """Split a pure difference binomial ``x^a - x^b`` into ``(a, b)``."""
    terms = list(poly.items())
    if len(terms) != 2 or terms[0][1] != -terms[1][1]:
        raise ValueError(f"not a pure difference binomial: {poly}")
    (ea, ca), (eb, _) = terms
    return (tuple(ea), tuple(eb)) if ca == 1 else (tuple(eb), tuple(ea))


# ---------------------------------------------------------------------------
# Monoids and ideals


@dataclass(frozen=True)
class MonoidIdeal:
    """Ideal ``union (M + g_i)``; no generators is the empty-ideal marker."""

    generators: Tuple[Exp, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.generators


@dataclass(frozen=True, eq=False)
class FinMonoid:
    names: Tuple[str, ...]
    relations: Tuple[Relation, ...] = ()
    pointed_ideal: Tuple[Exp, ...] = ()
    _algebras: Dict[int, PresentedRing] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid generator name {name!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"repeated generator names in {self.names}")
        g = len(self.names)
        rels = tuple((tuple(int(x) for x in a), tuple(int(x) for x in b)) for a, b in self.relations)
        for a, b in rels:
            if len(a) != g or len(b) != g or min(a + b, default=0) < 0:
                raise ValueError(f"relation {a} = {b} does not fit {g} generators")
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "pointed_ideal", tuple(tuple(int(x) for x in e) for e in self.pointed_ideal))

    # -- construction -------------------------------------------------------

    @classmethod
    def free(cls, names: Sequence[str]) -> "FinMonoid":
        return cls(tuple(names))

    @classmethod
    def trivial(cls) -> "FinMonoid":
        return cls(())

    @classmethod
    def parse(cls, names: Sequence[str], relations: Sequence[str] = ()) -> "FinMonoid":
        """``FinMonoid.parse(["u", "v", "w"], ["u+w = 2*v"])``."""
        base = cls(tuple(names))
        return cls(base.names, tuple(base.parse_relation(text) for text in relations))

    @classmethod
    def affine(cls, names: Sequence[str], points: Sequence[Sequence[int]]) -> "FinMonoid":
        """The submonoid of ``Z^d`` generated by ``points``, presented by its toric ideal."""
        g = len(points)
        if len(names) != g:
            raise ValueError(f"{len(names)} names for {g} points")
        d = len(points[0]) if points else 0
        f = AbGroupMap.build(FgAbGroup.free(g), FgAbGroup.free(d), points)
        lattice = kernel_cokernel(f).inclusion
        ring = make_ring(tuple(names), 0)
        binomials = []
        for c in lattice:
            pos = tuple(max(x, 0) for x in c)
            neg = tuple(max(-x, 0) for x in c)
            binomials.append(monomial(ring, pos) - monomial(ring, neg))
        toric = saturate_by_product(binomials, ring) if binomials else []
        return cls(tuple(names), tuple(binomial_pair(p) for p in toric))

    # -- elements -----------------------------------------------------------

    @property
    def num_generators(self) -> int:
        return len(self.names)

    @property
    def is_pointed(self) -> bool:
        return bool(self.pointed_ideal)

    @property
    def zero(self) -> Exp:
        return (0,) * len(self.names)

    def generator(self, i: int) -> Exp:
        return unit_vector(len(self.names), i)

    def parse_element(self, text: str) -> Exp:
        text = text.strip()
        out = [0] * len(self.names)
        if text == "0":
            return tuple(out)
        for part in text.split("+"):
            match = _TERM_RE.match(part)
            if not match:
                raise ValueError(f"cannot parse monoid element {text!r}")
            coeff = int(match.group(1) or 1)
            name = match.group(2)
            if name not in self.names:
                raise ValueError(f"unknown monoid generator {name!r} in {text!r}")
            out[self.names.index(name)] += coeff
        return tuple(out)

    def parse_relation(self, text: str) -> Relation:
        if text.count("=") != 1:
            raise ValueError(f"relation {text!r} needs exactly one '='")
        lhs, rhs = text.split("=")
        return self.parse_element(lhs), self.parse_element(rhs)

    def format_element(self, e: Sequence[int]) -> str:
        parts = []
        for name, k in zip(self.names, e):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{k}*{name}")
        return " + ".join(parts) if parts else "0"

    def format_relation(self, rel: Relation) -> str:
        return f"{self.format_element(rel[0])} = {self.format_element(rel[1])}"

    # -- algebra ------------------------------------------------------------

    def difference_ideal(self, ring) -> list:
        """Generators of the ideal spanned by ``x^a - x^b`` for ``a, b`` in the pointed ideal."""
        if not self.pointed_ideal:
            return []
        first = monomial(ring, self.pointed_ideal[0])
        out = [monomial(ring, g) - first for g in self.pointed_ideal[1:]]
        out += [first * (x - ring.one) for x in ring.gens]
        return out

    def algebra(self, K: FieldSpec = RATIONALS) -> PresentedRing:
        cached = self._algebras.get(K.characteristic)
        if cached is None:
            ring = make_ring(self.names, K.characteristic)
            gens = [monomial(ring, a) - monomial(ring, b) for a, b in self.relations]
            gens += self.difference_ideal(ring)
            cached = PresentedRing(self.names, K, tuple(g for g in gens if g), "affine")
            self._algebras[K.characteristic] = cached
        return cached

    def normal_form(self, e: Sequence[int]) -> Exp:
        A = self.algebra()
        if not A.ideal_basis:
            return tuple(e)
        nf = gb.reduce_full({(0, tuple(e)): A.field.domain.one}, A.ideal_basis, A.order)
        (_, exp), = nf.keys()
        return exp

    def equivalent(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.normal_form(a) == self.normal_form(b)

    def in_ideal(self, ideal: MonoidIdeal, e: Sequence[int]) -> bool:
        if ideal.is_empty:
            return False
        A = self.algebra()
        ring = A.poly_ring
        extended = A.with_ideal([monomial(ring, g) for g in ideal.generators])
        return extended.contains(monomial(ring, e))

    def elements_up_to(self, degree: int, budget: Optional[int] = None) -> List[Exp]:
        """Distinct classes represented by exponent rows of total degree at most ``degree``."""
        seen: Dict[Exp, Exp] = {}
        for total in range(degree + 1):
            for e in exponents_of_degree(len(self.names), total):
                nf = self.normal_form(e)
                if nf not in seen:
                    seen[nf] = e
                    if budget is not None and len(seen) > budget:
                        raise BudgetExceeded(f"more than {budget} monoid classes up to degree {degree}")
        return list(seen.values())

    def is_unit(self, e: Sequence[int]) -> bool:
        """``e`` is invertible: ``1`` lies in ``I_M + (x^e)``."""
        if not any(e):
            return True
        A = self.algebra()
        ring = A.poly_ring
        return A.with_ideal([monomial(ring, e)]).is_unit_ideal()

    def describe(self) -> str:
        rels = ", ".join(self.format_relation(r) for r in self.relations)
        body = f"<{', '.join(self.names)}" + (f" | {rels}>" if rels else ">")
        if self.pointed_ideal:
            body += " / (" + ", ".join(self.format_element(e) for e in self.pointed_ideal) + ")"
        return body

    def __repr__(self) -> str:
        return f"FinMonoid({self.describe()})"


def exponents_of_degree(n: int, total: int) -> Iterator[Exp]:
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in exponents_of_degree(n - 1, total - first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Homomorphisms


@dataclass(frozen=True, eq=False)
class MonoidHom:
    source: FinMonoid
    target: FinMonoid
    images: Tuple[Exp, ...]

    def __post_init__(self) -> None:
        imgs = tuple(tuple(int(x) for x in e) for e in self.images)
        if len(imgs) != self.source.num_generators or any(len(e) != self.target.num_generators for e in imgs):
            raise IllFormedMap("image list does not match the generator counts")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def parse(cls, source: FinMonoid, target: FinMonoid, images: Dict[str, str]) -> "MonoidHom":
        rows = []
        for name in source.names:
            if name not in images:
                raise IllFormedMap(f"no image given for generator {name!r}")
            rows.append(target.parse_element(images[name]))
        return cls(source, target, tuple(rows))

    @classmethod
    def identity(cls, M: FinMonoid) -> "MonoidHom":
        return cls(M, M, tuple(M.generator(i) for i in range(M.num_generators)))

    def apply(self, e: Sequence[int]) -> Exp:
        out = self.target.zero
        for k, img in zip(e, self.images):
            if k:
                out = add(out, scale_exp(img, k))
        return out

    def is_well_defined(self) -> bool:
        if not all(self.target.equivalent(self.apply(a), self.apply(b)) for a, b in self.source.relations):
            return False
        if self.source.is_pointed:
            if not self.target.is_pointed:
                return False
            ideal = MonoidIdeal(self.target.pointed_ideal)
            return all(self.target.in_ideal(ideal, self.apply(g)) for g in self.source.pointed_ideal)
        return True

    def validate(self) -> "MonoidHom":
        if not self.is_well_defined():
            raise IllFormedMap(f"{self.source.describe()} -> {self.target.describe()} does not respect relations")
        return self

    def compose(self, other: "MonoidHom") -> "MonoidHom":
        """``other`` after ``self``."""
        return MonoidHom(self.source, other.target, tuple(other.apply(e) for e in self.images))

    def gp_map(self) -> AbGroupMap:
        src, tgt = quotient_gp(self.source), quotient_gp(self.target)
        if tgt.ngens == 0 or src.ngens == 0:
            return AbGroupMap.build(src, tgt, [[0] * tgt.ngens for _ in range(src.ngens)])
        return AbGroupMap.build(src, tgt, self.images)

    def _joint_algebra(self) -> Tuple[PresentedRing, int]:
        """Ring ``K[x (target), y (source)] / (I_N + (x^{g(e_i)} - y_i))`` with ``x`` eliminated first."""
        nt, ns = self.target.num_generators, self.source.num_generators
        names = tuple(f"x{i}" for i in range(nt)) + tuple(f"y{i}" for i in range(ns))
        ring = make_ring(names, 0)
        tgt = self.target.algebra()
        lift = [ring.from_dict({tuple(exp) + (0,) * ns: c for exp, c in g.items()}) for g in tgt.ideal_gens]
        for i, img in enumerate(self.images):
            lift.append(monomial(ring, img + (0,) * ns) - monomial(ring, (0,) * nt + unit_vector(ns, i)))
        return PresentedRing(names, RATIONALS, tuple(lift), "affine"), nt

    @functools.cached_property
    def _elimination_basis(self) -> Tuple[Tuple[gb.Vector, ...], gb.TermOrder, int]:
        R, nt = self._joint_algebra()
        order = gb.TermOrder("degrevlex", eliminate=nt)
        basis = gb.standard_basis([poly_to_vector(g) for g in R.ideal_gens], order)
        return tuple(basis), order, nt

    def preimages(self) -> List[Exp]:
        """A source element mapping to each target generator; ``NotSurjective`` otherwise."""
        basis, order, nt = self._elimination_basis
        ns = self.source.num_generators
        out = []
        for j in range(nt):
            start = {(0, unit_vector(nt, j) + (0,) * ns): RATIONALS.domain.one}
            nf = gb.reduce_full(start, basis, order)
            exps = [exp for (_, exp) in nf]
            if len(exps) != 1 or any(exps[0][:nt]):
                raise NotSurjective(f"generator {self.target.names[j]!r} is not in the image")
            out.append(tuple(exps[0][nt:]))
        return out

    def is_surjective(self) -> bool:
        try:
            self.preimages()
        except NotSurjective:
            return False
        return True

    def kernel_binomials(self) -> List[Relation]:
        """Pure difference binomials generating ``ker(K[source] -> K[target])`` modulo ``I_source``."""
        basis, order, nt = self._elimination_basis
        src = self.source.algebra()
        out = []
        for v in basis:
            if any(any(exp[:nt]) for _, exp in v):
                continue
            poly = src.poly_ring.from_dict({exp[nt:]: c for (_, exp), c in v.items()})
            if src.contains(poly):
                continue
            out.append(binomial_pair(poly))
        return out


# ---------------------------------------------------------------------------
# Operations


@dataclass(frozen=True)
class GroupCompletion:
    group: FgAbGroup
    images: Tuple[Exp, ...]

    def coordinates(self, e: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return self.group.coordinates(e)


def monoid_algebra_presentation(M: FinMonoid, K: FieldSpec = RATIONALS) -> PresentedRing:
    return M.algebra(K)


def group_completion(M: FinMonoid) -> GroupCompletion:
    if M.is_pointed:
        raise PointedMonoid(f"{M.describe()} has an absorbing element; use quotient_gp")
    rows = [[x - y for x, y in zip(a, b)] for a, b in M.relations]
    group = FgAbGroup.from_presentation(rows, ngens=M.num_generators)
    return GroupCompletion(group, tuple(M.generator(i) for i in range(M.num_generators)))


def quotient_gp(M: FinMonoid) -> FgAbGroup:
    """Group completion, trivial for a pointed monoid."""
    if M.is_pointed:
        return FgAbGroup.trivial()
    return group_completion(M).group


def is_integral(M: FinMonoid) -> Verdict:
    """``M -> M^gp`` is injective iff ``I_M`` is saturated by the product of the variables."""
    if M.is_pointed:
        raise PointedMonoid(f"{M.describe()} has an absorbing element")
    cert = Certificate("is_integral")
    cert.precondition("monoid has no absorbing element")
    A = M.algebra(RATIONALS)
    ctx = ring_context(A.variables, A.field, False)
    basis = [vector_to_strings(v, 1, A.variables, A.field) for v in A.ideal_basis]
    cert.claim_standard_basis(ctx, 1, basis, label="I_M")
    saturation = saturate_by_product(list(A.ideal_gens), A.poly_ring) if A.ideal_gens else []
    cert.note("saturation", [A.format(p) for p in saturation])
    witness = None
    for p in saturation:
        inside = A.contains(p)
        cert.claim_membership(ctx, 1, basis, [A.format(p)], inside, label="saturation generator", decisive=True)
        if not inside and witness is None:
            a, b = binomial_pair(p)
            witness = {"binomial": A.format(p), "elements": [M.format_element(a), M.format_element(b)]}
    cert.require(witness is None, "I_M is saturated")
    if witness is not None:
        cert.witness(witness)
        return cert.build(Status.FAILS)
    return cert.build(Status.HOLDS)


def quotient_by_ideal(M: FinMonoid, I: MonoidIdeal) -> FinMonoid:
    """``M/I``: the pointed monoid identifying every element of ``I``."""
    if I.is_empty:
        return M
    for g in I.generators:
        if M.is_unit(g):
            raise ImproperIdeal(f"ideal generator {M.format_element(g)} is a unit")
    gens = M.pointed_ideal + tuple(g for g in I.generators if g not in M.pointed_ideal)
    return FinMonoid(M.names, M.relations, gens)


def localization(M: FinMonoid, S: Sequence[Sequence[int]]) -> FinMonoid:
    """Adjoin an inverse generator for each element of ``S``."""
    if M.is_pointed:
        raise PointedMonoid("localization of a pointed monoid")
    if not S:
        return M
    g = M.num_generators
    k = len(S)
    names = list(M.names)
    for s in S:
        base = M.format_element(s).replace(" + ", "_").replace("*", "") or "one"
        cand = f"inv_{base}"
        while cand in names:
            cand += "_"
        names.append(cand)
    pad = (0,) * k
    rels = [(a + pad, b + pad) for a, b in M.relations]
    for j, s in enumerate(S):
        rels.append((tuple(s) + unit_vector(k, j), (0,) * (g + k)))
    return FinMonoid(tuple(names), tuple(rels))


@dataclass(frozen=True)
class UnitsInfo:
    units: FgAbGroup
    is_sharp: bool
    maximal_ideal: MonoidIdeal
    unit_generators: Tuple[int, ...]


def units_and_sharpness(M: FinMonoid) -> UnitsInfo:
    if M.is_pointed:
        raise PointedMonoid("units of a pointed monoid")
    if not is_integral(M).holds:
        raise NotIntegral(f"{M.describe()} is not integral")
    unit_gens = tuple(i for i in range(M.num_generators) if M.is_unit(M.generator(i)))
    G = group_completion(M).group
    inclusion = AbGroupMap.build(FgAbGroup.free(len(unit_gens)), G, [M.generator(i) for i in unit_gens])
    kc = kernel_cokernel(inclusion)
    units = FgAbGroup.from_presentation(kc.inclusion, ngens=len(unit_gens))
    ideal = MonoidIdeal(tuple(M.generator(i) for i in range(M.num_generators) if i not in unit_gens))
    return UnitsInfo(units, units.is_trivial, ideal, unit_gens)


def maximal_ideal(M: FinMonoid) -> MonoidIdeal:
    """``M - M*`` generated by the non-unit generators (pointed monoids allowed)."""
    return MonoidIdeal(tuple(M.generator(i) for i in range(M.num_generators) if not M.is_unit(M.generator(i))))


@dataclass(frozen=True)
class Pushout:
    monoid: FinMonoid
    left: MonoidHom
    right: MonoidHom


def pushout(h1: MonoidHom, h2: MonoidHom) -> Pushout:
    """``N1 (+)_M N2`` for ``h1: M -> N1`` and ``h2: M -> N2``."""
    if h1.source is not h2.source:
        raise IllFormedMap("pushout legs must share their source")
    N1, N2 = h1.target, h2.target
    a, b = N1.num_generators, N2.num_generators
    names = list(N1.names)
    rename = {}
    for name in N2.names:
        new = name
        while new in names:
            new += "_"
        rename[name] = new
        names.append(new)
    pad_b, pad_a = (0,) * b, (0,) * a
    rels = [(x + pad_b, y + pad_b) for x, y in N1.relations]
    rels += [(pad_a + x, pad_a + y) for x, y in N2.relations]
    for k in range(h1.source.num_generators):
        rels.append((h1.images[k] + pad_b, pad_a + h2.images[k]))
    ideal = tuple(x + pad_b for x in N1.pointed_ideal) + tuple(pad_a + x for x in N2.pointed_ideal)
    P = FinMonoid(tuple(names), tuple(rels), ideal)
    left = MonoidHom(N1, P, tuple(unit_vector(a + b, i) for i in range(a)))
    right = MonoidHom(N2, P, tuple(unit_vector(a + b, a + i) for i in range(b)))
    return Pushout(P, left, right)


# ---------------------------------------------------------------------------
# Saturation


def _primitive(vec: Sequence[Rational]) -> List[int]:
    den = 1
    for x in vec:
        den = ilcm(den, Rational(x).q)
    ints = [int(Rational(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // int(g) for x in ints] if g else ints


def _facet_normals(points: Sequence[Sequence[int]], d: int) -> List[List[int]]:
    if d == 1:
        return [[1 if any(p[0] > 0 for p in points) else -1]]
    normals: List[List[int]] = []
    for subset in itertools.combinations(range(len(points)), d - 1):
        mat = Matrix([list(points[i]) for i in subset])
        if mat.rank() != d - 1:
            continue
        n = _primitive(list(mat.nullspace()[0]))
        values = [sum(a * b for a, b in zip(n, p)) for p in points]
        if all(v >= 0 for v in values):
            cand = n
        elif all(v <= 0 for v in values):
            cand = [-x for x in n]
        else:
            continue
        if cand not in normals:
            normals.append(cand)
    return normals


def _parallelepiped_points(basis: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    d = len(basis)
    form = smith_normal_form([list(r) for r in basis])
    diag = form.diagonal
    inv = Matrix(basis).inv()
    out = []
    for coords in itertools.product(*[range(abs(x)) for x in diag]):
        x = [0] * d
        for c, row in zip(coords, form.V_inv):
            for j in range(d):
                x[j] += c * row[j]
        lam = Matrix([x]) * inv
        shift = [int(floor(v)) for v in lam]
        y = tuple(x[j] - sum(shift[i] * basis[i][j] for i in range(d)) for j in range(d))
        out.append(y)
    return out


def is_saturated(M: FinMonoid, hilbert_budget: int = 10_000) -> Verdict:
    """Compare ``M`` with the lattice points of its cone, through a Hilbert basis."""
    if M.is_pointed:
        raise PointedMonoid("saturation of a pointed monoid")
    cert = Certificate("is_saturated")
    integral = is_integral(M)
    if not integral.holds:
        raise NotIntegral(f"{M.describe()} is not integral")
    cert.precondition("monoid is integral")
    G = group_completion(M).group
    if not G.is_free:
        raise TorsionCompletion(f"group completion {G.describe()} has torsion")
    cert.precondition("group completion is torsion free")
    cert.claim_snf(G.presentation, G.form, G.ngens, label="group completion")
    images = G.free_images()

    info = units_and_sharpness(M)
    if not info.is_sharp:
        lattice = [images[i] for i in info.unit_generators]
        Q = FgAbGroup.from_presentation(lattice, ngens=G.rank)
        if not Q.is_free:
            d = Q.form.diagonal
            i = next(k for k, x in enumerate(d) if x > 1)
            cert.claim_snf(Q.presentation, Q.form, Q.ngens, label="modulo units")
            cert.claim_compare(d[i], "==", 1, label="free modulo units", decisive=True)
            cert.witness({"element": list(Q.form.V_inv[i]), "multiple": d[i], "reason": "torsion modulo units"})
            return cert.build(Status.FAILS)
        images = [list(Q.coordinates(v)[1]) for v in images]
    points = [tuple(p) for p in images if any(p)]
    d = len(points[0]) if points else 0
    cert.note("cone_dimension", d)
    if d == 0:
        cert.note("hilbert_basis", [])
        cert.claim_compare(d, "==", 0, label="cone is a point", decisive=True)
        return cert.build(Status.HOLDS)

    normals = _facet_normals(points, d)
    weight = [sum(n[j] for n in normals) for j in range(d)]

    def ell(p: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(weight, p))

    def in_cone(p: Sequence[int]) -> bool:
        return all(sum(a * b for a, b in zip(n, p)) >= 0 for n in normals)

    candidates = set(points)
    for subset in itertools.combinations(points, d):
        if Matrix(list(subset)).rank() < d:
            continue
        candidates.update(_parallelepiped_points(subset))
        if len(candidates) > hilbert_budget:
            raise BudgetExceeded(f"more than {hilbert_budget} Hilbert basis candidates")
    zero = (0,) * d
    candidates.discard(zero)
    hilbert = sorted(
        (x for x in candidates
         if not any(h != x and in_cone(tuple(a - b for a, b in zip(x, h))) for h in candidates)),
        key=lambda p: (ell(p), p),
    )
    cert.note("facet_normals", normals).note("hilbert_basis", [list(h) for h in hilbert])

    states = {"count": 0}

    @functools.lru_cache(maxsize=None)
    def member(p: Tuple[int, ...]) -> bool:
        if p == zero:
            return True
        states["count"] += 1
        if states["count"] > hilbert_budget:
            raise BudgetExceeded(f"membership search exceeded {hilbert_budget} states")
        for v in points:
            rest = tuple(a - b for a, b in zip(p, v))
            if ell(rest) >= 0 and in_cone(rest) and member(rest):
                return True
        return False

    missing = [h for h in hilbert if not member(h)]
    member.cache_clear()
    cert.claim_compare(len(missing), "==", 0, label="hilbert basis inside monoid", decisive=True)
    if missing:
        cert.witness({"element": list(missing[0]), "hilbert_basis": [list(h) for h in hilbert]})
        return cert.build(Status.FAILS)
    return cert.build(Status.HOLDS)
