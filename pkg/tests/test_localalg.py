import pytest

from logtk.src.algebra import groebner as gb
from logtk.src.algebra.localalg import (
    FpModule,
    PresentedRing,
    is_regular_local,
    koszul_h1_vanishes,
    krull_dimension,
    minimal_generators,
    poly_to_vector,
    tor_cyclic,
)
from logtk.src.algebra.polys import FieldSpec, format_poly, parse_poly
from logtk.src.algebra.verdict import Status
from logtk.src.utils.errors import NotMinimal, PreconditionError

Q = FieldSpec()


def ring(variables, relations=(), mode="local", field=Q):
    return PresentedRing.build(variables, field, relations, mode)


def test_field_parsing():
    assert FieldSpec.parse("Q").characteristic == 0
    assert FieldSpec.parse("Fp(5)").characteristic == 5
    assert FieldSpec.parse("GF(3)").label == "Fp(3)"
    with pytest.raises(ValueError):
        FieldSpec.parse("Fp(4)")


def test_parse_and_print_keep_declared_order():
    R = ring(["y", "x"])
    p = parse_poly("x^2*y - 3*x + 2/3", R.poly_ring)
    assert format_poly(p, R.variables) == R.format(p)
    assert R.equal(p, R.parse("y*x**2 - 3*x + 2/3"))


def test_global_basis_is_buchberger_closed():
    R = ring(["x", "y"], mode="affine")
    gens = [poly_to_vector(R.parse(t)) for t in ("x*y", "x^2")]
    basis = gb.standard_basis(gens, R.order)
    assert gb.is_standard_basis(basis, R.order)
    assert len(basis) == 2


def test_basis_is_deterministic():
    R = ring(["x", "y", "z"], mode="affine")
    gens = [poly_to_vector(R.parse(t)) for t in ("x^2 - y*z", "y^2 - x*z", "z^2 - x*y")]
    assert gb.standard_basis(gens, R.order) == gb.standard_basis(gens, R.order)


def test_local_basis_of_unit_multiple():
    R = ring(["x"], ["x + x^2"])
    assert R.contains(R.parse("x"))
    assert not R.is_unit_ideal()


@pytest.mark.parametrize(
    "variables,relations,expected",
    [
        (["x", "y"], [], 2),
        (["x", "y"], ["x*y"], 1),
        (["u", "v", "w"], ["u*w - v^2"], 2),
    ],
)
def test_krull_dimension(variables, relations, expected):
    assert krull_dimension(ring(variables, relations)) == expected


def test_dimension_ignores_redundant_generator():
    assert krull_dimension(ring(["x", "y"], ["x*y", "x^2*y"])) == 1
    assert krull_dimension(ring(["y", "x"], ["x*y"])) == 1


@pytest.mark.parametrize(
    "relations,status",
    [([], Status.HOLDS), (["x*y"], Status.FAILS), (["y - x^2"], Status.HOLDS)],
)
def test_is_regular_local(relations, status):
    verdict = is_regular_local(ring(["x", "y"], relations))
    assert verdict.status is status


def test_regular_local_needs_local_mode():
    with pytest.raises(PreconditionError):
        is_regular_local(ring(["x"], mode="affine"))


def test_minimal_generators():
    R = ring(["x"])
    assert [R.format(g) for g in minimal_generators([R.parse("x"), R.parse("x + x^2")], R)] == ["x"]
    S = ring(["x", "y"])
    assert len(minimal_generators([S.parse("x"), S.parse("y")], S)) == 2
    assert minimal_generators([], S) == []


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_koszul_full_parameter_system(n):
    names = [f"x{i}" for i in range(n)]
    R = ring(names)
    assert koszul_h1_vanishes([R.gen(i) for i in range(n)], R).holds


def test_koszul_fails_on_node():
    R = ring(["x", "y"], ["x*y"])
    verdict = koszul_h1_vanishes([R.gen(0), R.gen(1)], R)
    assert verdict.fails
    assert verdict.witness["non_koszul_syzygy"]


def test_koszul_empty_sequence_holds():
    assert koszul_h1_vanishes([], ring(["x"])).holds


def test_koszul_rejects_non_minimal():
    R = ring(["x"])
    with pytest.raises(NotMinimal):
        koszul_h1_vanishes([R.parse("x"), R.parse("x + x^2")], R)


def test_tor_over_itself_vanishes():
    R = ring(["t"], mode="affine")
    A = ring(["t"])
    assert tor_cyclic(R, A, [A.gen(0)], [R.parse("t^2")]).rank == 0


def test_tor_of_unit_ideal_vanishes():
    R = ring(["t"], mode="affine")
    A = ring(["t"])
    assert tor_cyclic(R, A, [A.gen(0)], [R.poly_ring.one]).rank == 0


def test_tor_detects_node():
    R = ring(["u", "v"], mode="affine")
    A = ring(["x", "y"], ["x*y"])
    module = tor_cyclic(R, A, [A.gen(0), A.gen(1)], [R.gen(0), R.gen(1)])
    assert module.residue_dim() == 1


def test_module_freeness_and_residue_dimension():
    R = ring(["x", "y"])
    assert FpModule.free(R, 2).is_free()
    cyclic = FpModule.from_matrix(ring(["x"]), [["x"]])
    assert cyclic.residue_dim() == 1
    assert not cyclic.is_free()
    W = FpModule.from_matrix(R, [["x", "y"]])
    assert W.residue_dim() == 1
