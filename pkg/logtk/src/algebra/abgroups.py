"""Finitely generated abelian groups.

Groups are cokernels of integer matrices.  Rows of a presentation are
relations among the generators, so ``coker(R) = Z^g / rowspace(R)``.
Everything is exact: Python integers throughout, no floating point.

Example
-------
>>> G = FgAbGroup.from_presentation([[2, 0], [0, 0]], ngens=2)
>>> G.rank, G.invariant_factors
(1, (2,))
>>> functor_dims(FgAbGroup.from_presentation([[2]]), FieldSpec(characteristic=2))
FunctorDims(hom=1, ext1=1, tor1=1, tensor=1)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix
from sympy.polys.matrices import DomainMatrix

from ..utils.errors import IllFormedMap
from .polys import FieldSpec

log = logging.getLogger(__name__)

IntMatrix = List[List[int]]


def _identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: Optional[int] = None) -> IntMatrix:
    inner = len(b) if inner is None else inner
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def vecmat(x: Sequence[int], m: Sequence[Sequence[int]], ncols: int) -> List[int]:
    out = [0] * ncols
    for xi, row in zip(x, m):
        if xi:
            for j in range(ncols):
                out[j] += xi * row[j]
    return out


def determinant(m: Sequence[Sequence[int]]) -> int:
    if not m:
        return 1
    return int(Matrix(m).det())


@dataclass(frozen=True)
class SmithForm:
    """``U * A * V == D`` with ``D`` diagonal and ``d_1 | d_2 | ...``."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> List[int]:
        n = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(n)]

    @property
    def nonzero(self) -> List[int]:
        return [d for d in self.diagonal if d]


def smith_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithForm:
    """Smith normal form with minimal-absolute-value pivoting.

    ``ncols`` is needed only when ``A`` has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [[int(x) for x in row] for row in A]
    U = _identity(m)
    V = _identity(n)
    V_inv = _identity(n)

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
            V_inv[i], V_inv[j] = V_inv[j], V_inv[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        # col_dst += q * col_src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        V_inv[src] = [a - q * b for a, b in zip(V_inv[src], V_inv[dst])]

    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
                    clean = clean and D[t][j] == 0
            if not clean:
                cands = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
                cands += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
                _, ci, cj = min(cands)
                if ci != t:
                    swap_rows(t, ci)
                else:
                    swap_cols(t, cj)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    log.debug("SNF of %dx%d matrix: diagonal %s", m, n, [D[i][i] for i in range(min(m, n))])
    return SmithForm(U=U, D=D, V=V, V_inv=V_inv)


def verify_smith_form(A: Sequence[Sequence[int]], form: SmithForm, ncols: Optional[int] = None) -> bool:
    """Recheck ``U*A*V == D``, unimodularity and the divisibility chain."""
    m = len(A)
    n = len(A[0]) if m else (ncols if ncols is not None else len(form.V))
    if m and matmul(matmul(form.U, A), form.V) != form.D:
        return False
    if abs(determinant(form.U)) != 1 or abs(determinant(form.V)) != 1:
        return False
    for i, row in enumerate(form.D):
        for j, x in enumerate(row):
            if i != j and x:
                return False
    diag = form.diagonal
    nz = [d for d in diag if d]
    if any(d < 0 for d in diag) or diag[: len(nz)] != nz:
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:])) and len(form.V) == n


def solve_left(S: Sequence[Sequence[int]], v: Sequence[int], ncols: Optional[int] = None) -> Optional[List[int]]:
    """Integer ``x`` with ``x * S == v``, or ``None`` if there is none."""
    n = len(v)
    if not S:
        return [] if not any(v) else None
    form = smith_normal_form(S)
    vv = vecmat(v, form.V, n)
    y = [0] * len(S)
    diag = form.diagonal
    for i in range(n):
        d = diag[i] if i < len(diag) else 0
        if d:
            if vv[i] % d:
                return None
            y[i] = vv[i] // d
        elif vv[i]:
            return None
    return vecmat(y, form.U, len(S))


def row_basis(rows: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """A basis of the lattice spanned by ``rows``."""
    if not rows:
        return []
    form = smith_normal_form(rows)
    out = []
    for i, d in enumerate(form.diagonal):
        if d:
            out.append([d * x for x in form.V_inv[i]])
    return out


@dataclass(frozen=True)
class FgAbGroup:
    """``Z^rank + sum Z/d_i`` together with the presentation it came from."""

    ngens: int
    presentation: Tuple[Tuple[int, ...], ...]
    rank: int
    invariant_factors: Tuple[int, ...]
    form: SmithForm = field(repr=False, compare=False)

    @classmethod
    def from_presentation(cls, R: Sequence[Sequence[int]], ngens: Optional[int] = None) -> "FgAbGroup":
        rows = tuple(tuple(int(x) for x in row) for row in R)
        g = len(rows[0]) if rows else (ngens or 0)
        if ngens is not None and rows and len(rows[0]) != ngens:
            raise ValueError(f"relation rows have length {len(rows[0])}, expected {ngens}")
        form = smith_normal_form([list(r) for r in rows], ncols=g)
        nonzero = form.nonzero
        invariant = tuple(d for d in nonzero if d > 1)
        return cls(ngens=g, presentation=rows, rank=g - len(nonzero), invariant_factors=invariant, form=form)

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls.from_presentation([], ngens=rank)

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls.free(0)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    @property
    def is_free(self) -> bool:
        return not self.invariant_factors

    def order(self) -> Optional[int]:
        """Group order, or ``None`` when the group is infinite."""
        if self.rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def _transformed(self, x: Sequence[int]) -> List[int]:
        if len(x) != self.ngens:
            raise ValueError(f"element has {len(x)} coordinates, group has {self.ngens} generators")
        return vecmat(x, self.form.V, self.ngens)

    def is_zero(self, x: Sequence[int]) -> bool:
        xv = self._transformed(x)
        diag = self.form.diagonal
        for i, c in enumerate(xv):
            d = diag[i] if i < len(diag) else 0
            if (d and c % d) or (not d and c):
                return False
        return True

    def coordinates(self, x: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Torsion coordinates (reduced mod each ``d_i``) and free coordinates."""
        xv = self._transformed(x)
        diag = self.form.diagonal
        torsion, free = [], []
        for i, c in enumerate(xv):
            d = diag[i] if i < len(diag) else 0
            if d > 1:
                torsion.append(c % d)
            elif d == 0:
                free.append(c)
        return tuple(torsion), tuple(free)

    def free_images(self) -> IntMatrix:
        """Free coordinates of each generator (the map to ``Z^rank``)."""
        out = []
        for i in range(self.ngens):
            e = [int(i == j) for j in range(self.ngens)]
            out.append(list(self.coordinates(e)[1]))
        return out

    def describe(self) -> str:
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {"rank": self.rank, "invariant_factors": list(self.invariant_factors), "presentation": [list(r) for r in self.presentation]}


@dataclass(frozen=True)
class AbGroupMap:
    """Homomorphism given by images of source generators (one row each)."""

    source: FgAbGroup
    target: FgAbGroup
    matrix: Tuple[Tuple[int, ...], ...]

    @classmethod
    def build(cls, source: FgAbGroup, target: FgAbGroup, matrix: Sequence[Sequence[int]]) -> "AbGroupMap":
        rows = tuple(tuple(int(x) for x in r) for r in matrix)
        if len(rows) != source.ngens or any(len(r) != target.ngens for r in rows):
            raise IllFormedMap(f"matrix shape does not match {source.ngens} -> {target.ngens} generators")
        return cls(source=source, target=target, matrix=rows)

    def apply(self, x: Sequence[int]) -> List[int]:
        return vecmat(x, self.matrix, self.target.ngens)

    def is_well_defined(self) -> bool:
        return all(self.target.is_zero(self.apply(r)) for r in self.source.presentation)

    def compose(self, other: "AbGroupMap") -> "AbGroupMap":
        """``other`` after ``self``."""
        rows = [other.apply(r) for r in self.matrix]
        return AbGroupMap.build(self.source, other.target, rows)


@dataclass(frozen=True)
class KernelCokernel:
    kernel: FgAbGroup
    cokernel: FgAbGroup
    inclusion: IntMatrix  # kernel generators as source elements
    projection: IntMatrix  # target generators onto cokernel generators (identity)


def kernel_cokernel(f: AbGroupMap) -> KernelCokernel:
    """Kernel and cokernel of ``f`` with inclusion/projection witnesses."""
    if not f.is_well_defined():
        raise IllFormedMap("map does not carry source relations into target relations")
    a, b = f.source.ngens, f.target.ngens
    coker = FgAbGroup.from_presentation(list(f.target.presentation) + [list(r) for r in f.matrix], ngens=b)
    projection = _identity(b)

    stacked = [list(r) for r in f.matrix] + [list(r) for r in f.target.presentation]
    if a == 0:
        return KernelCokernel(FgAbGroup.trivial(), coker, [], projection)
    if b == 0 or not stacked:
        lattice = _identity(a)
    else:
        form = smith_normal_form(stacked)
        rk = len(form.nonzero)
        lattice = [row[:a] for row in form.U[rk:]]
        lattice = [r for r in lattice if any(r)]
    basis = row_basis(lattice, a)
    if not basis:
        return KernelCokernel(FgAbGroup.trivial(), coker, [], projection)
    relations = []
    for r in f.source.presentation:
        c = solve_left(basis, list(r))
        if c is None:  # pragma: no cover - source relations lie in the kernel lattice
            raise IllFormedMap("source relation outside the kernel lattice")
        relations.append(c)
    kernel = FgAbGroup.from_presentation(relations, ngens=len(basis))
    log.debug("kernel %s, cokernel %s", kernel.describe(), coker.describe())
    return KernelCokernel(kernel, coker, basis, projection)


@dataclass(frozen=True)
class FunctorDims:
    hom: int
    ext1: int
    tor1: int
    tensor: int

    def as_dict(self) -> dict:
        return {"hom": self.hom, "ext1": self.ext1, "tor1": self.tor1, "tensor": self.tensor}


def functor_dims(G: FgAbGroup, K: FieldSpec) -> FunctorDims:
    """Dimensions of ``Hom(G,K)``, ``Ext^1(G,K)``, ``Tor_1(G,K)``, ``G (x) K``."""
    p = K.characteristic
    if p == 0:
        return FunctorDims(hom=G.rank, ext1=0, tor1=0, tensor=G.rank)
    divisible = sum(1 for d in G.invariant_factors if d % p == 0)
    return FunctorDims(hom=G.rank + divisible, ext1=divisible, tor1=divisible, tensor=G.rank + divisible)


def gamma_dimension(f: AbGroupMap, K: FieldSpec) -> int:
    """``dim (ker f (x) K) + dim Tor_1(coker f, K)``."""
    kc = kernel_cokernel(f)
    return functor_dims(kc.kernel, K).tensor + functor_dims(kc.cokernel, K).tor1


def _rank_mod(rows: Sequence[Sequence[int]], ncols: int, K: FieldSpec) -> int:
    if not rows or not ncols:
        return 0
    dom = K.domain
    mat = DomainMatrix([[dom.convert(int(x)) for x in r] for r in rows], (len(rows), ncols), dom)
    return mat.rank()


def cone_homology_dims(f: AbGroupMap, K: FieldSpec) -> Tuple[int, int]:
    """``(H_0, H_1)`` of the mapping cone of ``f`` tensored with ``K``.

    The cone is built from free resolutions of source and target, so it is
    an independent evaluation of ``coker (x) K`` and of the Gamma term.
    """
    a, b = f.source.ngens, f.target.ngens
    bs = row_basis([list(r) for r in f.source.presentation], a)
    bt = row_basis([list(r) for r in f.target.presentation], b)
    lifted = []
    for r in bs:
        image = f.apply(r)
        c = solve_left(bt, image) if bt else ([] if not any(image) else None)
        if c is None:
            raise IllFormedMap("relation image outside the target relation lattice")
        lifted.append(c)
    # d1: C1 = Z^a + Z^rT -> C0 = Z^b ; d2: C2 = Z^rS -> C1
    d1 = [list(r) for r in f.matrix] + [list(r) for r in bt]
    d2 = [[-x for x in r] + list(c) for r, c in zip(bs, lifted)]
    c1 = a + len(bt)
    rank1 = _rank_mod(d1, b, K)
    rank2 = _rank_mod(d2, c1, K)
    return b - rank1, c1 - rank1 - rank2
