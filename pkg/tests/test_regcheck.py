import random

import pytest

from logtk.src.algebra.localalg import PresentedRing
from logtk.src.algebra.logdiff import over_ground
from logtk.src.algebra.monoids import FinMonoid, MonoidHom, MonoidIdeal, quotient_by_ideal
from logtk.src.algebra.polys import FieldSpec
from logtk.src.algebra.prelog import PrelogHom, PrelogRing
from logtk.src.algebra.regcheck import (
    fundamental_sequence_low_degree,
    is_log_complete_intersection,
    is_log_regular,
    is_log_regular_ideal,
    is_log_smooth_sufficient,
    kato_criterion,
    omega_freeness_spot_check,
    regularity_smoothness_crosscheck,
    smoothness_equivalence,
    tor2_vanishes_after_tor1,
)
from logtk.src.algebra.verdict import Status, replay
from logtk.src.utils.errors import NotSharp, PreconditionError

Q = FieldSpec()


def logpoint(field=Q):
    R = PresentedRing.build(["s", "t"], field)
    return PrelogRing.from_names(R, FinMonoid.free(["a", "b"]), {"a": "s", "b": "t"})


def node():
    R = PresentedRing.build(["x", "y"], Q, ["x*y"])
    return PrelogRing.from_names(R, FinMonoid.free(["a", "b"]), {"a": "x", "b": "y"})


def cusp():
    R = PresentedRing.build(["x", "y"], Q, ["y^2 - x^3"])
    return PrelogRing.from_names(R, FinMonoid.free(["a"]), {"a": "x"})


def cut_of(P):
    M = quotient_by_ideal(P.monoid, MonoidIdeal(((1, 0),)))
    return PrelogRing.from_names(P.ring.with_ideal([P.ring.parse("s")]), M, {"a": "s", "b": "t"})


def test_log_point_is_log_regular():
    v = is_log_regular(logpoint())
    assert v.holds
    assert "prelog ring validated" in v.preconditions_checked
    assert replay(v.certificate) is Status.HOLDS


def test_node_is_not_log_regular():
    v = is_log_regular(node())
    assert v.fails
    assert v.witness["tor1_dimension"] == 1
    assert replay(v.certificate) is Status.FAILS


def test_kato_on_node_fails_on_dimension():
    v = kato_criterion(node())
    assert v.fails
    assert v.witness == {"dim_A": 1, "dim_A_mod_I": 0, "rank_M_gp": 2}


def test_kato_on_log_point_holds():
    assert kato_criterion(logpoint()).holds


def test_cusp_with_one_generator():
    P = cusp()
    assert is_log_regular(P).fails
    v = kato_criterion(P)
    assert v.fails
    assert v.witness["reason"] == "A/I is not regular"


def test_toric_monoid_algebra_is_log_regular():
    M = FinMonoid.affine(["p", "q", "r"], [[1, 0], [1, 1], [1, 2]])
    P = PrelogRing.of_monoid(M, Q)
    assert is_log_regular(P).holds
    assert kato_criterion(P).holds


def test_log_regular_ideal_of_one_coordinate():
    P = logpoint()
    v = is_log_regular_ideal(P, [P.ring.parse("s")])
    assert v.holds
    assert v.summary["monoid_preimage"]["generators"] == ["a"]


def test_pointed_monoid_is_rejected():
    with pytest.raises(PreconditionError):
        is_log_regular(cut_of(logpoint()))


@pytest.mark.parametrize("field", ["Q", "Fp(2)", "Fp(3)", "Fp(5)"])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_kummer_cover_depends_on_characteristic(p, field):
    K = FieldSpec.parse(field)
    h = MonoidHom.parse(FinMonoid.free(["a"]), FinMonoid.free(["b"]), {"a": f"{p}*b"})
    v = is_log_smooth_sufficient(h, K)
    assert v.fails == (K.characteristic == p)
    assert replay(v.certificate) is v.status
    if v.fails:
        assert v.witness["ext1_cokernel"] == 1
        assert v.witness["characteristic"] == p


def test_smoothness_equivalence_for_log_point():
    P = logpoint()
    h = MonoidHom.identity(P.monoid)
    assert smoothness_equivalence(h, P).holds


def test_smoothness_equivalence_rejects_foreign_monoid():
    P = logpoint()
    h = MonoidHom.identity(FinMonoid.free(["a", "b"]))
    with pytest.raises(PreconditionError):
        smoothness_equivalence(h, P)


def test_log_ci_direct_route():
    v = is_log_complete_intersection(logpoint())
    assert v.holds
    assert v.summary["route"] == "direct"


def test_log_ci_presentation_route():
    P = logpoint()
    cut = cut_of(P)
    s = PrelogHom.build(P, cut, {"s": "s", "t": "t"}, {"a": "a", "b": "b"})
    v = is_log_complete_intersection(cut, "presentation", s)
    assert v.holds
    assert v.summary["presenting"]["status"] == "holds"


def test_log_ci_route_arguments():
    P = logpoint()
    with pytest.raises(PreconditionError):
        is_log_complete_intersection(P, "presentation")
    with pytest.raises(PreconditionError):
        is_log_complete_intersection(P, "sideways")
    with pytest.raises(PreconditionError):
        is_log_complete_intersection(node())


def test_crosscheck_agrees_on_log_point():
    v = regularity_smoothness_crosscheck(logpoint())
    assert v.holds
    assert v.summary["comparison"] == "agree"


def test_crosscheck_not_comparable_on_node():
    v = regularity_smoothness_crosscheck(node())
    assert v.holds
    assert v.summary["comparison"] == "not-comparable"


def test_crosscheck_needs_saturated_monoid():
    M = FinMonoid.affine(["p", "q"], [[2], [3]])
    with pytest.raises(PreconditionError):
        regularity_smoothness_crosscheck(PrelogRing.of_monoid(M, Q))


def test_tor2_after_tor1():
    assert tor2_vanishes_after_tor1(logpoint()).holds
    with pytest.raises(PreconditionError):
        tor2_vanishes_after_tor1(node())


def test_omega_free_on_log_point():
    v = omega_freeness_spot_check(logpoint())
    assert v.holds
    assert v.summary["omega"]["rank"] == 2


def test_fundamental_sequence_over_ground():
    v = fundamental_sequence_low_degree(over_ground(logpoint()))
    assert v.holds
    assert v.summary["h0"] == {"omega_monoid": 2, "omega_ring": 2, "cokernel": 2, "omega_log": 2}
    assert v.summary["gamma"] == 0
    assert v.summary["h1"] is None


def test_fundamental_sequence_records_gamma_of_kummer():
    A = PrelogRing.from_names(PresentedRing.build(["s"], Q), FinMonoid.free(["a"]), {"a": "s^2"})
    B = PrelogRing.from_names(PresentedRing.build(["t"], Q), FinMonoid.free(["b"]), {"b": "t"})
    f = PrelogHom.build(A, B, {"s": "t"}, {"a": "2*b"})
    v = fundamental_sequence_low_degree(f)
    assert v.summary["gamma"] == 0
    assert v.summary["h0"]["cokernel"] == 0


def test_fundamental_sequence_conormal_matches_pushout():
    C = logpoint()
    R = C.ring.with_ideal([C.ring.parse("s - t")])
    B = PrelogRing.from_names(R, FinMonoid.free(["c"]), {"c": "s"})
    f = PrelogHom.build(C, B, {"s": "s", "t": "t"}, {"a": "c", "b": "c"})
    v = fundamental_sequence_low_degree(f)
    assert v.holds
    h1 = v.summary["h1"]
    assert (h1["ideal"], h1["w_tensor"], h1["seen_in_w"], h1["seen_in_ideal"]) == (1, 1, 0, 1)
    assert h1["conormal"] == h1["predicted"] == 1
    (claim,) = [c for c in v.certificate["claims"] if c["label"] == "H1 pushout dimension"]
    assert claim["op"] == "==" and claim["decisive"]
    assert replay(v.certificate) is Status.HOLDS


FIELDS = ["Q", "Fp(2)", "Fp(3)", "Fp(5)"]


def free_logpoint(n, field):
    names = [f"s{i}" for i in range(1, n + 1)]
    gens = [f"a{i}" for i in range(1, n + 1)]
    R = PresentedRing.build(names, field)
    return PrelogRing.from_names(R, FinMonoid.free(gens), dict(zip(gens, names)))


def node_over(field):
    R = PresentedRing.build(["x", "y"], field, ["x*y"])
    return PrelogRing.from_names(R, FinMonoid.free(["a", "b"]), {"a": "x", "b": "y"})


def cusp_over(field):
    R = PresentedRing.build(["x", "y"], field, ["y^2 - x^3"])
    return PrelogRing.from_names(R, FinMonoid.free(["a"]), {"a": "x"})


def cone_over(field):
    return PrelogRing.of_monoid(FinMonoid.affine(["p", "q", "r"], [[1, 0], [1, 1], [1, 2]]), field)


def random_toric(seed, field):
    rng = random.Random(seed)
    heights = sorted(rng.sample(range(4), 3))
    return PrelogRing.of_monoid(FinMonoid.affine(["p", "q", "r"], [[1, h] for h in heights]), field)


def random_binomial_quotient(seed, field):
    rng = random.Random(seed)
    i, j = rng.randint(1, 3), rng.randint(2, 3)
    R = PresentedRing.build(["x", "y"], field, [f"x^{i} - y^{j}"])
    return PrelogRing.from_names(R, FinMonoid.free(["a", "b"]), {"a": "x", "b": "y"})


AGREEMENT = (
    [(f"logpoint{n}", lambda K, n=n: free_logpoint(n, K), field) for n in (1, 2, 3) for field in FIELDS]
    + [("node", node_over, field) for field in FIELDS]
    + [("cusp", cusp_over, field) for field in FIELDS]
    + [("cone", cone_over, field) for field in FIELDS]
    + [(f"toric{seed}", lambda K, seed=seed: random_toric(seed, K), FIELDS[seed % 4]) for seed in range(4)]
    + [(f"binomial{seed}", lambda K, seed=seed: random_binomial_quotient(seed, K), FIELDS[seed % 4])
       for seed in range(4)]
)


@pytest.mark.parametrize("name, build, field", AGREEMENT, ids=[f"{a}-{c}" for a, _, c in AGREEMENT])
def test_kato_criterion_agrees_with_log_regularity(name, build, field):
    P = build(FieldSpec.parse(field))
    regular = is_log_regular(P)
    kato = kato_criterion(P)
    assert regular.status is not Status.INDETERMINATE
    assert kato.status is regular.status
    assert replay(regular.certificate) is regular.status
    assert replay(kato.certificate) is kato.status


def unit_chart():
    N = FinMonoid.parse(["a", "u", "v"], ["u + v = 0"])
    R = PresentedRing.build(["x", "y", "z"], Q, ["y + z + y*z"])
    return PrelogRing.from_names(R, N, {"a": "x", "u": "1 + y", "v": "1 + z"})


def test_smoothness_with_unit_generators():
    P = unit_chart()
    v = smoothness_equivalence(MonoidHom.identity(P.monoid), P)
    assert v.holds
    assert v.summary["fibre"]["status"] == "holds"
    assert v.summary["dim_K[N]"] == 2
    assert replay(v.certificate) is Status.HOLDS


def test_constant_units_are_a_closed_immersion():
    N = FinMonoid.parse(["a", "u", "v"], ["u + v = 0"])
    P = PrelogRing.from_names(PresentedRing.build(["x"], Q), N, {"a": "x", "u": "-1", "v": "-1"})
    v = smoothness_equivalence(MonoidHom.identity(N), P)
    assert v.fails
    assert v.witness["reason"] == "B is not flat over K[N]"


def test_log_regularity_needs_sharp_monoid():
    with pytest.raises(NotSharp):
        is_log_regular(unit_chart())


def merged_chart(rng, field):
    """A free log point and its quotient identifying coordinates in blocks."""
    n = rng.randint(2, 3)
    C = free_logpoint(n, field)
    k = rng.randint(1, n - 1)
    blocks = list(range(k)) + [rng.randrange(k) for _ in range(n - k)]
    rng.shuffle(blocks)
    reps, relations = {}, []
    for v, b in zip(C.ring.variables, blocks):
        if b in reps:
            relations.append(C.ring.parse(f"{v} - {reps[b]}"))
        else:
            reps[b] = v
    P = PrelogRing.from_names(C.ring.with_ideal(relations), FinMonoid.free([f"c{b}" for b in range(k)]),
                              {f"c{b}": reps[b] for b in range(k)})
    s = PrelogHom.build(C, P, {v: v for v in C.ring.variables}, {g: f"c{b}" for g, b in zip(C.monoid.names, blocks)})
    return P, s


@pytest.mark.parametrize("seed", range(10))
def test_log_ci_routes_agree(seed):
    P, s = merged_chart(random.Random(200 + seed), FieldSpec.parse(FIELDS[seed % 4]))
    direct = is_log_complete_intersection(P)
    presented = is_log_complete_intersection(P, "presentation", s)
    assert direct.status is presented.status is Status.HOLDS
    assert replay(presented.certificate) is Status.HOLDS
