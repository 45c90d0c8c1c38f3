"""Log differentials, conormal modules and their exact sequences.

Every module is the cokernel of an explicit block matrix over the target
ring.  Generators are labelled ``d<var>`` for Kaehler differentials,
``dlog <gen>`` for the monoid classes, ``[q]`` for conormal classes of ideal
generators and ``w<k>`` for the kernel of ``L^gp -> N^gp``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from ..utils.errors import IllFormedMap, PreconditionError
from . import groebner as gb
from .abgroups import FgAbGroup, kernel_cokernel, solve_left
from .localalg import (
    ExactnessReport,
    FpModule,
    ModuleMap,
    PresentedRing,
    check_exact,
    map_vector,
    poly_to_vector,
)
from .monoids import Exp, FinMonoid, MonoidHom, Relation, localization, unit_vector
from .polys import make_ring, monomial, substitute, total_degree
from .prelog import PrelogHom, PrelogRing, pushout, validate_hom
from .verdict import Certificate, Status, Verdict

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Building blocks


def differential(p: PolyElement, R: PresentedRing, offset: int = 0) -> gb.Vector:
    """``dp = sum dp/dx_i dx_i`` with ``dx_i`` in slot ``offset + i``."""
    out: gb.Vector = {}
    for i, x in enumerate(R.poly_ring.gens):
        out.update(poly_to_vector(p.diff(x), offset + i))
    return out


def integer_vector(row: Sequence[int], R: PresentedRing, offset: int) -> gb.Vector:
    dom = R.field.domain
    zero = (0,) * R.nvars
    out: gb.Vector = {}
    for j, c in enumerate(row):
        value = dom.convert(int(c))
        if value:
            out[(offset + j, zero)] = value
    return out


def dlog_count(P: PrelogRing) -> int:
    """Number of ``dlog`` generators: the generators of ``N^gp`` (none when pointed)."""
    return 0 if P.monoid.is_pointed else P.monoid.num_generators


def dlog_image(row: Sequence[int], target: PrelogRing) -> gb.Vector:
    if target.monoid.is_pointed:
        return {}
    return integer_vector(row, target.ring, target.ring.nvars)


def cokernel_rows(h: MonoidHom) -> List[List[int]]:
    """Relations of ``N^gp / im M^gp`` on the generators of ``N``."""
    N = h.target
    if N.is_pointed:
        return []
    rows = [[x - y for x, y in zip(a, b)] for a, b in N.relations]
    if not h.source.is_pointed:
        rows += [list(img) for img in h.images]
    return rows


def over_ground(P: PrelogRing) -> PrelogHom:
    """Structure map ``(K, 1) -> P``."""
    base = PrelogRing(PresentedRing((), P.ring.field, (), "local"), FinMonoid.trivial(), ())
    return PrelogHom(base, P, (), MonoidHom(base.monoid, P.monoid, ()))


def kahler_differentials(R: PresentedRing) -> FpModule:
    """``Omega_{R|K}``: free on ``dx_i`` modulo the Jacobian of the ideal."""
    cols = tuple(differential(g, R) for g in R.ideal_gens)
    return FpModule(R, R.nvars, cols, tuple(f"d{x}" for x in R.variables))


def relative_differentials(f: PrelogHom) -> FpModule:
    """``Omega_{B|A}`` for the ring part of ``f``."""
    R = f.target.ring
    cols = [differential(g, R) for g in R.ideal_gens] + [differential(img, R) for img in f.ring_images]
    return FpModule(R, R.nvars, tuple(cols), tuple(f"d{x}" for x in R.variables))


def log_differentials(f: PrelogHom) -> FpModule:
    """``Omega_{(B,N)|(A,M)}`` as the cokernel of the glued block matrix."""
    B = f.target
    R = B.ring
    m = R.nvars
    q = dlog_count(B)
    cols: List[gb.Vector] = [differential(g, R) for g in R.ideal_gens]
    cols += [differential(img, R) for img in f.ring_images]
    cols += [integer_vector(row, R, m) for row in cokernel_rows(f.monoid_map)]
    for j, a in enumerate(B.alpha):
        v = differential(a, R)
        if q:
            v = gb.add_vectors(v, gb.scale(poly_to_vector(a, m + j), -R.field.domain.one))
        cols.append(v)
    labels = tuple(f"d{x}" for x in R.variables) + tuple(f"dlog {n}" for n in B.monoid.names[:q])
    module = FpModule(R, m + q, tuple(cols), labels)
    log.debug("log differentials: %d generators, %d relations", module.rank, len(module.columns))
    return module


def base_change(module: FpModule, f: PrelogHom) -> FpModule:
    """``T (x)_S module`` along the ring part of ``f: S -> T``."""
    if module.ring is not f.source.ring:
        raise ValueError("module does not live over the source of the map")
    cols = tuple(map_vector(c, module.rank, f.source.ring, f.target.ring, f.ring_images) for c in module.columns)
    return FpModule(f.target.ring, module.rank, cols, module.labels)


def derivation_pairing_dims(omega: FpModule) -> Tuple[int, int]:
    """``(dim Hom(Omega, k), mu(Omega))``; equal for every finitely presented module."""
    return omega.hom_dim(), omega.minimal_presentation().rank


# ---------------------------------------------------------------------------
# nu_g and conormal modules


@dataclass(frozen=True, eq=False)
class NuMap:
    """``J/J^2 -> K[N] (x) W`` on the binomial generators of ``J = ker(K[L] -> K[N])``."""

    hom: MonoidHom
    binomials: Tuple[Relation, ...]
    w_group: FgAbGroup
    w_basis: Tuple[Tuple[int, ...], ...]
    entries: Tuple[Tuple[Exp, Tuple[int, ...]], ...]

    def w_coordinates(self, element: Sequence[int]) -> Tuple[int, ...]:
        """Coordinates in ``W`` of an element of ``L^gp`` that maps to zero in ``N^gp``."""
        return w_coordinates(self.hom, self.w_basis, element)

    def as_dict(self) -> dict:
        L, N = self.hom.source, self.hom.target
        return {
            "binomials": [f"{L.format_element(a)} - {L.format_element(b)}" for a, b in self.binomials],
            "W": self.w_group.describe(),
            "images": [{"monomial": N.format_element(e), "w": list(c)} for e, c in self.entries],
        }


def w_coordinates(h: MonoidHom, basis: Sequence[Sequence[int]], element: Sequence[int]) -> Tuple[int, ...]:
    L = h.source
    if not basis:
        return ()
    rows = [list(b) for b in basis]
    if not L.is_pointed:
        rows += [[x - y for x, y in zip(a, b)] for a, b in L.relations]
    sol = solve_left(rows, list(element))
    if sol is None:
        raise IllFormedMap(f"{list(element)} does not lie in ker(L^gp -> N^gp)")
    return tuple(sol[: len(basis)])


def nu_g(g: MonoidHom) -> NuMap:
    """``x^{l1} - x^{l2} -> x^{g(l2)} (x) (l1 - l2)`` on the binomial generators of the kernel."""
    g.preimages()
    binomials = tuple(g.kernel_binomials())
    kc = kernel_cokernel(g.gp_map())
    basis = tuple(tuple(r) for r in kc.inclusion)
    entries = []
    for l1, l2 in binomials:
        coords = w_coordinates(g, basis, [a - b for a, b in zip(l1, l2)])
        entries.append((g.target.normal_form(g.apply(l2)), coords))
    return NuMap(g, binomials, kc.kernel, basis, tuple(entries))


def nu_tilde(nu: NuMap, element: Dict[Exp, int]) -> Dict[Exp, Tuple[int, ...]]:
    """Evaluate ``nu`` on an integer combination of monomials of ``K[L]`` lying in ``J``.

    Terms are grouped by their image in ``N``; inside one fibre the image is
    ``x^n (x) sum c_l * l``.  Zero contributions are dropped.
    """
    g = nu.hom
    fibres: Dict[Exp, List[int]] = {}
    for l, c in element.items():
        if not c:
            continue
        n = g.target.normal_form(g.apply(l))
        acc = fibres.setdefault(n, [0] * g.source.num_generators)
        for i, x in enumerate(l):
            acc[i] += c * x
    out = {}
    if not nu.w_basis:
        return out
    for n, acc in fibres.items():
        coords = nu.w_coordinates(acc)
        if not nu.w_group.is_zero(list(coords)):
            out[n] = coords
    return out


@dataclass(frozen=True, eq=False)
class SurjectionData:
    """A quotient ``(C, L) -> (B, N)``: same variables, surjective monoid map."""

    hom: PrelogHom
    ideal_gens: Tuple[PolyElement, ...]
    ring_part: int
    nu: NuMap

    @property
    def source(self) -> PrelogRing:
        return self.hom.source

    @property
    def target(self) -> PrelogRing:
        return self.hom.target

    @property
    def w_rank(self) -> int:
        return len(self.nu.w_basis)


def surjection_data(hom: PrelogHom) -> SurjectionData:
    C, B = hom.source, hom.target
    if C.ring.variables != B.ring.variables or C.ring.field != B.ring.field:
        raise PreconditionError("conormal_module", "C -> B must be a quotient on the same variables")
    if any(p != x for p, x in zip(hom.ring_images, C.ring.poly_ring.gens)):
        raise PreconditionError("conormal_module", "the ring map must send every variable to itself")
    if not all(B.ring.contains(g) for g in C.ring.ideal_gens):
        raise PreconditionError("conormal_module", "the ideal of B must contain the ideal of C")
    check = validate_hom(hom)
    if not check.holds:
        raise IllFormedMap(f"surjection does not commute: {check.witness}")
    nu = nu_g(hom.monoid_map)
    gens = list(B.ring.ideal_gens)
    gens += [C.alpha_of(l1) - C.alpha_of(l2) for l1, l2 in nu.binomials]
    return SurjectionData(hom, tuple(gens), len(B.ring.ideal_gens), nu)


def conormal_presentation(s: SurjectionData) -> FpModule:
    """Pushout of ``I/I^2 <- B (x) J/J^2 -> B (x) W`` before minimization."""
    C, B = s.source, s.target
    R = B.ring
    r = len(s.ideal_gens)
    cols: List[gb.Vector] = []
    if r:
        cols += gb.syzygies([poly_to_vector(x) for x in s.ideal_gens], 1, C.ring.order,
                            relations=list(C.ring.ideal_basis), nvars=C.ring.nvars)
    for row in s.nu.w_group.presentation:
        cols.append(integer_vector(row, R, r))
    for j, (target_exp, coords) in enumerate(s.nu.entries):
        v = poly_to_vector(R.poly_ring.one, s.ring_part + j)
        image = B.alpha_of(target_exp)
        for k, c in enumerate(coords):
            if c:
                v = gb.add_vectors(v, gb.scale(poly_to_vector(image, r + k), -R.field.domain.convert(int(c))))
        cols.append(v)
    labels = tuple(f"[{R.format(x)}]" for x in s.ideal_gens) + tuple(f"w{k + 1}" for k in range(s.w_rank))
    return FpModule(R, r + s.w_rank, tuple(c for c in cols if c), labels)


def conormal_module(s: SurjectionData) -> FpModule:
    return conormal_presentation(s).minimal_presentation()


def diagonal_conormal(h: MonoidHom, field) -> Tuple[FpModule, FpModule, bool]:
    """Kernel of multiplication on ``K[N] (x)_{K[M]} K[N]`` modulo its square, against ``Omega_{K[N]|K[M]}``.

    Returns both modules over ``K[N]`` and whether ``e_j -> dy_j`` is an isomorphism.
    """
    N = h.target
    KN = N.algebra(field)
    names = KN.variables
    primed = tuple(f"{n}_" for n in names)
    while set(primed) & set(names):
        primed = tuple(f"{n}_" for n in primed)
    ring = make_ring(names + primed, field.characteristic)
    k = len(names)
    left, right = list(ring.gens[:k]), list(ring.gens[k:])
    gens = [substitute(g, left, ring) for g in KN.ideal_gens] + [substitute(g, right, ring) for g in KN.ideal_gens]
    for img in h.images:
        gens.append(monomial(ring, tuple(img) + (0,) * k) - monomial(ring, (0,) * k + tuple(img)))
    T = PresentedRing(names + primed, field, tuple(g for g in gens if g), "affine")
    delta = [left[j] - right[j] for j in range(k)]
    syz = gb.syzygies([poly_to_vector(d) for d in delta], 1, T.order, relations=list(T.ideal_basis), nvars=T.nvars)
    collapse = list(KN.poly_ring.gens) + list(KN.poly_ring.gens)
    cols = tuple(map_vector(v, k, T, KN, collapse) for v in syz)
    conormal = FpModule(KN, k, cols, tuple(f"[{n} - {p}]" for n, p in zip(names, primed)))
    omega_cols = [differential(g, KN) for g in KN.ideal_gens]
    omega_cols += [differential(monomial(KN.poly_ring, img), KN) for img in h.images]
    omega = FpModule(KN, k, tuple(omega_cols), tuple(f"d{n}" for n in names))
    one = field.domain.one
    zero = (0,) * k
    iso = ModuleMap(conormal, omega, tuple({(j, zero): one} for j in range(k)))
    back = ModuleMap(omega, conormal, tuple({(j, zero): one} for j in range(k)))
    agrees = iso.is_well_defined() and back.is_well_defined() and iso.is_surjective() and back.is_surjective()
    return conormal, omega, agrees


def prelog_localization(P: PrelogRing, S: Sequence[Sequence[int]]) -> PrelogHom:
    """``(A, M) -> (A, S^{-1}M)`` for elements of ``S`` whose images are nonzero constants."""
    ring = P.ring.poly_ring
    inverses = []
    for s in S:
        value = P.alpha_of(s)
        if not value or total_degree(value) > 0:
            raise PreconditionError("prelog_localization", f"{P.ring.format(value)} is not a nonzero constant")
        inverses.append(ring.one.quo_ground(value.const()))
    M2 = localization(P.monoid, S)
    alpha = tuple(P.alpha) + tuple(inverses)
    target = PrelogRing(P.ring, M2, alpha)
    g = len(P.monoid.names)
    h = MonoidHom(P.monoid, M2, tuple(unit_vector(len(M2.names), i) for i in range(g)))
    return PrelogHom(P, target, tuple(ring.gens), h)


# ---------------------------------------------------------------------------
# Exact sequences


def _sequence_verdict(procedure: str, left: ModuleMap, right: ModuleMap, labels: Dict[str, str]) -> Verdict:
    cert = Certificate(procedure)
    defined = left.is_well_defined() and right.is_well_defined()
    cert.note("maps_well_defined", defined)
    report: ExactnessReport = check_exact(left, right)
    surjective = right.is_surjective()
    cert.note("exactness", report.as_dict()).note("right_surjective", surjective).note("modules", labels)
    cert.claim_compare(report.homology_dim, "==", 0, label="middle homology")
    witness: Optional[Dict[str, Any]] = None
    if not defined:
        witness = {"reason": "a map is not well defined"}
    elif not report.composition_zero:
        witness = {"reason": "composition is not zero"}
    elif not report.exact:
        witness = {"reason": "not exact in the middle", "cycle": report.witness}
    elif not surjective:
        witness = {"reason": "right map is not surjective"}
    cert.require(witness is None, "short exact")
    if witness is not None:
        cert.witness(witness)
        return cert.build(Status.FAILS)
    return cert.build(Status.HOLDS)


def first_sequence_maps(f: PrelogHom, g: PrelogHom) -> Tuple[ModuleMap, ModuleMap]:
    """``C (x) Omega_{B|A} -> Omega_{C|A} -> Omega_{C|B}``."""
    B, C = f.target, g.target
    omega_ba = base_change(log_differentials(f), g)
    omega_ca = log_differentials(f.compose(g))
    omega_cb = log_differentials(g)
    images = [differential(img, C.ring) for img in g.ring_images]
    images += [dlog_image(g.monoid_map.images[j], C) for j in range(dlog_count(B))]
    left = ModuleMap(omega_ba, omega_ca, tuple(images))
    identity = tuple(omega_ca.generator(i) for i in range(omega_ca.rank))
    right = ModuleMap(omega_ca, omega_cb, identity)
    log.debug("first sequence: %d -> %d -> %d generators", omega_ba.rank, omega_ca.rank, omega_cb.rank)
    return left, right


def check_first_sequence(f: PrelogHom, g: PrelogHom) -> Verdict:
    left, right = first_sequence_maps(f, g)
    return _sequence_verdict("check_first_sequence", left, right,
                             {"left": left.source.describe(), "middle": left.target.describe(),
                              "right": right.target.describe()})


def conormal_sequence_maps(f: PrelogHom, s: SurjectionData) -> Tuple[ModuleMap, ModuleMap]:
    """``N_{(B,N)|(C,L)} -> B (x) Omega_{C|A} -> Omega_{B|A}``."""
    C, B = s.source, s.target
    conormal = conormal_presentation(s)
    omega_ca = base_change(log_differentials(f), s.hom)
    omega_ba = log_differentials(f.compose(s.hom))
    m = C.ring.nvars
    images = [differential(q, B.ring) for q in s.ideal_gens]
    images += [integer_vector(row, B.ring, m) for row in s.nu.w_basis]
    left = ModuleMap(conormal, omega_ca, tuple(images))
    right_images = [omega_ba.generator(i) for i in range(m)]
    right_images += [dlog_image(s.hom.monoid_map.images[j], B) for j in range(dlog_count(C))]
    right = ModuleMap(omega_ca, omega_ba, tuple(right_images))
    return left, right


def check_conormal_sequence(f: PrelogHom, s: SurjectionData) -> Verdict:
    left, right = conormal_sequence_maps(f, s)
    return _sequence_verdict("check_conormal_sequence", left, right,
                             {"left": left.source.describe(), "middle": left.target.describe(),
                              "right": right.target.describe()})


def base_change_check(f1: PrelogHom, f2: PrelogHom) -> Verdict:
    """``B2 (x) Omega_{(B1,N1)|(A1,M1)} -> Omega_{(B2,N2)|(A2,M2)}`` is an isomorphism for the pushout."""
    po = pushout(f1, f2)
    Q = po.prelog
    source = base_change(log_differentials(f1), po.left)
    target = log_differentials(po.right)
    images = [differential(img, Q.ring) for img in po.left.ring_images]
    images += [dlog_image(po.left.monoid_map.images[j], Q) for j in range(dlog_count(f1.target))]
    phi = ModuleMap(source, target, tuple(images))
    cert = Certificate("base_change_check")
    defined = phi.is_well_defined()
    surjective = phi.is_surjective()
    injective = phi.is_injective() if defined else False
    cert.note("source", source.minimal_presentation().describe()).note("target", target.minimal_presentation().describe())
    cert.note("well_defined", defined).note("surjective", surjective).note("injective", injective)
    cert.require(defined and surjective and injective, "isomorphism")
    if defined and surjective and injective:
        return cert.build(Status.HOLDS)
    cert.witness({"well_defined": defined, "surjective": surjective, "injective": injective})
    return cert.build(Status.FAILS)
