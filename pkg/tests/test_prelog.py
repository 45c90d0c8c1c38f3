import pytest

from logtk.src.algebra.localalg import PresentedRing
from logtk.src.algebra.monoids import FinMonoid, MonoidHom
from logtk.src.algebra.polys import FieldSpec
from logtk.src.algebra.prelog import (
    PrelogHom,
    PrelogRing,
    log_ideal,
    monoid_preimage_ideal,
    permute_generators,
    pushout,
    quotient_prelog,
    validate,
    validate_hom,
)
from logtk.src.utils.errors import IllFormedMap, PreconditionError

Q = FieldSpec()


def logpoint():
    R = PresentedRing.build(["s", "t"], Q)
    return PrelogRing.from_names(R, FinMonoid.free(["a", "b"]), {"a": "s", "b": "t"})


def node():
    R = PresentedRing.build(["x", "y"], Q, ["x*y"])
    return PrelogRing.from_names(R, FinMonoid.free(["a", "b"]), {"a": "x", "b": "y"})


def test_validate_standard_instances():
    assert validate(logpoint()).holds
    assert validate(node()).holds


def test_validate_rejects_non_multiplicative_alpha():
    R = PresentedRing.build(["s"], Q)
    M = FinMonoid.parse(["a", "b"], ["a = b"])
    P = PrelogRing.from_names(R, M, {"a": "s", "b": "s^2"})
    verdict = validate(P)
    assert verdict.fails
    assert "relation" in verdict.witness


def test_validate_rejects_unit_image():
    R = PresentedRing.build(["s"], Q)
    P = PrelogRing.from_names(R, FinMonoid.free(["a"]), {"a": "1 + s"})
    assert validate(P).witness["reason"] == "non-unit generator maps to a unit"


def test_alpha_must_name_every_generator():
    R = PresentedRing.build(["s"], Q)
    with pytest.raises(IllFormedMap):
        PrelogRing.from_names(R, FinMonoid.free(["a", "b"]), {"a": "s"})


def test_preimage_of_maximal_ideal():
    P = logpoint()
    result = monoid_preimage_ideal(P, P.maximal_ideal())
    assert result.complete
    assert sorted(result.ideal.generators) == [(0, 1), (1, 0)]


def test_preimage_of_non_monomial_ideal_is_empty():
    P = logpoint()
    result = monoid_preimage_ideal(P, [P.ring.parse("s + t")], degree_bound=6)
    assert result.is_empty
    assert result.complete


def test_preimage_rejects_unit():
    P = logpoint()
    with pytest.raises(PreconditionError):
        monoid_preimage_ideal(P, [P.ring.poly_ring.one])


def test_log_ideal_of_maximal_ideal():
    P = logpoint()
    I = log_ideal(P, P.maximal_ideal())
    assert sorted(P.ring.format(g) for g in I.generators) == ["s", "t"]


def test_quotient_prelog_is_valid():
    P = logpoint()
    Qp = quotient_prelog(P, [P.ring.parse("s")])
    assert Qp.monoid.is_pointed
    assert validate(Qp).holds


def test_permute_generators_keeps_validity():
    P = permute_generators(node(), [1, 0])
    assert P.monoid.names == ("b", "a")
    assert validate(P).holds


def test_of_monoid_is_tautological():
    M = FinMonoid.parse(["u", "v", "w"], ["u+w = 2*v"])
    P = PrelogRing.of_monoid(M, Q)
    assert P.ring.is_local
    assert validate(P).holds


def test_hom_identity_and_composition():
    P = logpoint()
    ident = PrelogHom.identity(P)
    assert validate_hom(ident).holds
    assert validate_hom(ident.compose(ident)).holds


def test_hom_detects_non_commuting_square():
    P = logpoint()
    f = PrelogHom(P, P, tuple(P.ring.poly_ring.gens), MonoidHom.parse(P.monoid, P.monoid, {"a": "b", "b": "a"}))
    assert validate_hom(f).fails


def test_pushout_of_log_point_along_diagonal():
    ground = PrelogRing(PresentedRing.build([], Q), FinMonoid.trivial(), ())
    N = FinMonoid.free(["c"])
    line = PrelogRing.from_names(PresentedRing.build(["z"], Q), N, {"c": "z"})
    P = logpoint()
    f1 = PrelogHom(ground, P, (), MonoidHom(ground.monoid, P.monoid, ()))
    f2 = PrelogHom(ground, line, (), MonoidHom(ground.monoid, N, ()))
    glued = pushout(f1, f2)
    assert glued.prelog.ring.nvars == 3
    assert validate(glued.prelog).holds
    assert validate_hom(glued.left).holds
    assert validate_hom(glued.right).holds
