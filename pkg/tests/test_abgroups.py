import random
from math import gcd

import pytest

from logtk.src.algebra.abgroups import (
    AbGroupMap,
    FgAbGroup,
    cone_homology_dims,
    determinant,
    functor_dims,
    gamma_dimension,
    kernel_cokernel,
    matmul,
    smith_normal_form,
    solve_left,
    verify_smith_form,
)
from logtk.src.algebra.polys import FieldSpec
from logtk.src.utils.errors import IllFormedMap

Q = FieldSpec(characteristic=0)
F2 = FieldSpec(characteristic=2)
F3 = FieldSpec(characteristic=3)


def test_snf_of_small_matrix():
    A = [[2, 4], [0, 6]]
    form = smith_normal_form(A)
    assert form.nonzero == [2, 6]
    assert matmul(matmul(form.U, A), form.V) == form.D
    assert abs(determinant(form.U)) == 1
    assert abs(determinant(form.V)) == 1


def test_snf_random_matrices_verify():
    rng = random.Random(7)
    for _ in range(1000):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        form = smith_normal_form(A)
        assert abs(determinant(form.U)) == 1
        assert abs(determinant(form.V)) == 1
        assert matmul(matmul(form.U, A), form.V) == form.D
        d = form.nonzero
        assert all(x > 0 for x in d)
        assert all(b % a == 0 for a, b in zip(d, d[1:]))
        assert all(form.D[i][j] == 0 for i in range(m) for j in range(n) if i != j or i >= len(d))
        assert verify_smith_form(A, form)


def test_snf_zero_and_empty():
    form = smith_normal_form([[0, 0], [0, 0]])
    assert form.nonzero == []
    empty = smith_normal_form([], ncols=3)
    assert len(empty.V) == 3


def test_verify_rejects_tampered_form():
    A = [[2, 4], [0, 6]]
    form = smith_normal_form(A)
    bad = form.__class__(U=form.U, D=[[2, 0], [0, 5]], V=form.V, V_inv=form.V_inv)
    assert not verify_smith_form(A, bad)


def test_group_from_presentation():
    G = FgAbGroup.from_presentation([[2, 0], [0, 0]], ngens=2)
    assert G.rank == 1
    assert G.invariant_factors == (2,)
    assert G.order() is None
    assert G.describe() == "Z + Z/2"


def test_finite_group_order_and_zero_test():
    G = FgAbGroup.from_presentation([[4, 0], [0, 6]])
    assert G.order() == 24
    assert G.is_zero([4, 6])
    assert not G.is_zero([2, 0])


def test_functor_dims_torsion():
    G = FgAbGroup.from_presentation([[2]])
    assert functor_dims(G, Q).as_dict() == {"hom": 0, "ext1": 0, "tor1": 0, "tensor": 0}
    assert functor_dims(G, F2).as_dict() == {"hom": 1, "ext1": 1, "tor1": 1, "tensor": 1}
    assert functor_dims(G, F3).ext1 == 0


def test_kernel_cokernel_of_multiplication():
    f = AbGroupMap.build(FgAbGroup.free(1), FgAbGroup.free(1), [[3]])
    kc = kernel_cokernel(f)
    assert kc.kernel.is_trivial
    assert kc.cokernel.invariant_factors == (3,)


def test_kernel_of_projection():
    f = AbGroupMap.build(FgAbGroup.free(2), FgAbGroup.free(1), [[1], [1]])
    kc = kernel_cokernel(f)
    assert kc.kernel.rank == 1
    (w,) = kc.inclusion
    assert f.apply(w) == [0]
    assert kc.cokernel.is_trivial


def test_ill_formed_map_rejected():
    Z2 = FgAbGroup.from_presentation([[2]])
    f = AbGroupMap.build(Z2, FgAbGroup.free(1), [[1]])
    with pytest.raises(IllFormedMap):
        kernel_cokernel(f)


def test_solve_left():
    assert solve_left([[2, 0], [0, 3]], [4, 9]) == [2, 3]
    assert solve_left([[2, 0], [0, 3]], [1, 0]) is None


@pytest.mark.parametrize("field", [Q, F2, F3, FieldSpec(characteristic=5)])
def test_gamma_matches_cone(field):
    maps = [
        (FgAbGroup.free(1), FgAbGroup.free(1), [[2]]),
        (FgAbGroup.free(2), FgAbGroup.free(1), [[4], [6]]),
        (FgAbGroup.free(1), FgAbGroup.from_presentation([[6, 0]], ngens=2), [[2, 1]]),
    ]
    for source, target, matrix in maps:
        f = AbGroupMap.build(source, target, matrix)
        h0, h1 = cone_homology_dims(f, field)
        kc = kernel_cokernel(f)
        assert h0 == functor_dims(kc.cokernel, field).tensor
        assert h1 == gamma_dimension(f, field)


def torsion_map(rng):
    """Random well-defined map ``Z/d + Z^a -> Z/t1 + Z/t2 + Z^b`` with ``d, t1, t2`` in 2, 4, 6."""
    d = rng.choice([2, 4, 6])
    t = [rng.choice([2, 4, 6]) for _ in range(2)]
    a, b = rng.randint(0, 2), rng.randint(0, 2)
    source = FgAbGroup.from_presentation([[d] + [0] * a], ngens=1 + a)
    target = FgAbGroup.from_presentation([[t[0], 0] + [0] * b, [0, t[1]] + [0] * b], ngens=2 + b)
    torsion_image = [ti // gcd(ti, d) * rng.randint(0, 3) for ti in t] + [0] * b
    free_images = [[rng.randint(-4, 4) for _ in range(2 + b)] for _ in range(a)]
    return AbGroupMap.build(source, target, [torsion_image] + free_images)


@pytest.mark.parametrize("field", [Q, F2, F3])
def test_gamma_rank_identity_on_mixed_torsion(field):
    rng = random.Random(11)
    for _ in range(15):
        f = torsion_map(rng)
        kc = kernel_cokernel(f)
        dk, dc = functor_dims(kc.kernel, field), functor_dims(kc.cokernel, field)
        h0, h1 = cone_homology_dims(f, field)
        assert gamma_dimension(f, field) == dk.tensor + dc.tor1 == h1
        assert h0 == dc.tensor
