import pytest

from logtk.src.algebra.abgroups import kernel_cokernel
from logtk.src.algebra.monoids import (
    FinMonoid,
    MonoidHom,
    MonoidIdeal,
    group_completion,
    is_integral,
    is_saturated,
    localization,
    maximal_ideal,
    pushout,
    quotient_by_ideal,
    quotient_gp,
    units_and_sharpness,
)
from logtk.src.utils.errors import ImproperIdeal, NotSurjective, PointedMonoid


def test_parse_relation_pairs():
    M = FinMonoid.parse(["a", "b"])
    assert M.parse_relation("a+b = 2*b") == ((1, 1), (0, 2))
    assert M.format_relation(((1, 1), (0, 2))) == "a + b = 2*b"
    assert M.parse_element("0") == (0, 0)


def test_monoid_algebra_of_toric_relation():
    M = FinMonoid.parse(["u", "v", "w"], ["u+w = 2*v"])
    A = M.algebra()
    assert A.contains(A.parse("u*w - v^2"))
    # classes up to degree 4 match standard monomials of K[u,v,w]/(uw - v^2)
    assert len(M.elements_up_to(4)) == sum(2 * d + 1 for d in range(5))


def test_free_and_trivial_algebras():
    assert FinMonoid.free(["x", "y"]).algebra().ideal_gens == ()
    assert FinMonoid.trivial().algebra().nvars == 0


def test_group_completion():
    assert group_completion(FinMonoid.free(["a", "b"])).group.rank == 2
    G = group_completion(FinMonoid.parse(["a", "b"], ["a+b = 2*b"])).group
    assert G.rank == 1 and G.is_free
    assert group_completion(FinMonoid.parse(["a"], ["2*a = 3*a"])).group.is_trivial


def test_group_completion_rejects_pointed():
    M = quotient_by_ideal(FinMonoid.free(["a"]), MonoidIdeal(((2,),)))
    with pytest.raises(PointedMonoid):
        group_completion(M)
    assert quotient_gp(M).is_trivial


def test_is_integral():
    assert is_integral(FinMonoid.free(["a", "b", "c"])).holds
    assert is_integral(FinMonoid.parse(["u", "v", "w"], ["u+w = 2*v"])).holds
    verdict = is_integral(FinMonoid.parse(["a"], ["2*a = 3*a"]))
    assert verdict.fails
    assert verdict.witness["binomial"]


def test_quotient_by_ideal_classes():
    N = FinMonoid.free(["a"])
    M = quotient_by_ideal(N, MonoidIdeal(((2,),)))
    assert M.is_pointed
    assert M.equivalent((2,), (3,))
    assert not M.equivalent((1,), (2,))
    N2 = FinMonoid.free(["a", "b"])
    point = quotient_by_ideal(N2, maximal_ideal(N2))
    assert point.equivalent((1, 0), (0, 1))
    assert not point.equivalent((0, 0), (1, 0))


def test_quotient_by_unit_ideal_rejected():
    with pytest.raises(ImproperIdeal):
        quotient_by_ideal(FinMonoid.free(["a"]), MonoidIdeal(((0,),)))


def test_localization():
    N = FinMonoid.free(["a"])
    Z = localization(N, [(1,)])
    assert Z.num_generators == 2
    assert Z.is_unit(Z.generator(0))
    assert localization(N, []) is N
    ZN = localization(FinMonoid.free(["a", "b"]), [(1, 0)])
    info = units_and_sharpness(ZN)
    assert not info.is_sharp
    assert info.units.rank == 1


def test_localization_at_all_generators_is_a_group():
    M = FinMonoid.parse(["u", "v", "w"], ["u+w = 2*v"])
    L = localization(M, [M.generator(i) for i in range(3)])
    assert is_integral(L).holds
    h = MonoidHom(M, L, tuple(L.generator(i) for i in range(3)))
    f = h.gp_map()
    assert f.source.rank == f.target.rank == 2


def test_units_of_free_monoid():
    info = units_and_sharpness(FinMonoid.free(["a", "b"]))
    assert info.is_sharp
    assert info.maximal_ideal.generators == ((1, 0), (0, 1))
    assert units_and_sharpness(FinMonoid.trivial()).maximal_ideal.is_empty


def test_is_saturated():
    assert is_saturated(FinMonoid.free(["a", "b"])).holds
    assert is_saturated(FinMonoid.affine(["u", "v", "w"], [[1, 0], [1, 1], [1, 2]])).holds
    verdict = is_saturated(FinMonoid.affine(["p", "q"], [[2], [3]]))
    assert verdict.fails
    assert [abs(x) for x in verdict.witness["element"]] == [1]


def test_hom_surjectivity():
    N = FinMonoid.free(["b"])
    M = FinMonoid.free(["a"])
    onto = MonoidHom.parse(M, N, {"a": "b"})
    assert onto.is_surjective()
    kummer = MonoidHom.parse(M, N, {"a": "2*b"})
    assert not kummer.is_surjective()
    with pytest.raises(NotSurjective):
        kummer.preimages()


def test_kernel_binomials_of_diagonal():
    N2 = FinMonoid.free(["a", "b"])
    N = FinMonoid.free(["c"])
    h = MonoidHom.parse(N2, N, {"a": "c", "b": "c"})
    assert h.kernel_binomials() in ([((1, 0), (0, 1))], [((0, 1), (1, 0))])


def test_pushout_cokernel_agrees_at_group_level():
    M = FinMonoid.free(["a"])
    N = FinMonoid.free(["b"])
    h = MonoidHom.parse(M, N, {"a": "2*b"})
    glued = pushout(h, h)
    codiag = MonoidHom(glued.monoid, N, tuple(N.generator(0) for _ in range(2)))
    direct = kernel_cokernel(h.gp_map()).cokernel
    via_pushout = kernel_cokernel(codiag.gp_map()).kernel
    assert (direct.rank, direct.invariant_factors) == (via_pushout.rank, via_pushout.invariant_factors)
