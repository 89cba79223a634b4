import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from diskpot import lattice
from diskpot.errors import NotSaturated


def matrices(max_dim=5, bound=5):
    return st.integers(1, max_dim).flatmap(lambda r: st.integers(1, max_dim).flatmap(
        lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def check_snf(m):
    u, d, v = lattice.smith_normal_form(m)
    assert lattice.matmul(lattice.matmul(u, m), v) == d
    assert abs(lattice.determinant(u)) == 1
    assert abs(lattice.determinant(v)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)
    return diag


def test_snf_identity():
    u, d, v = lattice.smith_normal_form([[1, 0], [0, 1]])
    assert d == ((1, 0), (0, 1))


def test_snf_example():
    assert check_snf([[2, 4], [6, 8]]) == [2, 4]


def test_snf_zero_row():
    assert check_snf([[0, 0, 0]]) == [0]


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_snf_matches_sympy(m):
    diag = check_snf(m)
    ref = sympy_snf(sympy.Matrix(m), domain=sympy.ZZ)
    ref_diag = [abs(int(ref[i, i])) for i in range(min(ref.shape))]
    assert diag == ref_diag


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_hnf_properties(m):
    h, u = lattice.hermite_normal_form(m)
    assert lattice.matmul(u, m) == h
    assert abs(lattice.determinant(u)) == 1
    assert lattice.rank(h) == lattice.rank(m)
    # echelon with positive pivots and reduced entries above them
    last = -1
    for row in h:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        p = nz[0]
        assert p > last and row[p] > 0
        last = p


def test_kernel_coordinate():
    assert lattice.kernel_basis([[1, 0]]) == ((0, 1),)


def test_kernel_rank_two():
    k = lattice.kernel_basis([[1, 1, -1]])
    assert len(k) == 2
    assert all(a + b - c == 0 for a, b, c in k)
    assert lattice.invariant_factors(k) == (1, 1)


def test_kernel_full_rank_square_is_empty():
    assert lattice.kernel_basis([[1, 2], [3, 4]]) == ()


GZ_ACTION = [[1, 0, 0, 0, 0, 0], [-1, 1, 1, 0, 0, 0], [0, -1, -1, 1, 1, 0], [0, 0, 0, -1, -1, 1]]


def test_gz_relations_are_action_rows():
    # relations y11 = y21*y12 = y31*y22 = y32 = 1 read in the exponent basis
    # (y11,y12,y21,y22,y31,y32) are exactly the rows of the moment map matrix
    rows = [lattice.matvec(lattice.transpose(GZ_ACTION), e) for e in lattice.identity(4)]
    assert rows == [tuple(r) for r in GZ_ACTION]
    assert lattice.is_saturated(GZ_ACTION)
    # the quotient lattice has rank 2 and the complement kills the relations
    proj = lattice.kernel_basis(GZ_ACTION)
    assert len(proj) == 2
    assert all(not any(lattice.matvec(proj, r)) for r in GZ_ACTION)


@settings(max_examples=60, deadline=None)
@given(matrices(max_dim=6))
def test_kernel_basis_properties(m):
    k = lattice.kernel_basis(m)
    assert len(k) == len(m[0]) - lattice.rank(m)
    for v in k:
        assert not any(lattice.matvec(m, v))
    if k:
        assert lattice.invariant_factors(k) == (1,) * len(k)


def test_adapted_basis_coordinate():
    b = lattice.adapted_basis([(0, 1)], 2)
    assert b.complement_projection == ((1, 0),)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_adapted_basis_quadric_kernel(n):
    kernel = [tuple(int(i == j) for i in range(n)) for j in range(2, n)]
    b = lattice.adapted_basis(kernel, n)
    assert b.complement_projection == (tuple(int(i == 0) for i in range(n)),
                                       tuple(int(i == 1) for i in range(n)))


def test_adapted_basis_torsion():
    with pytest.raises(NotSaturated) as exc:
        lattice.adapted_basis([(2, 0)], 2)
    assert exc.value.torsion == (2,)


def test_adapted_basis_dependent():
    with pytest.raises(ValueError):
        lattice.adapted_basis([(1, 0), (2, 0)], 2)


def test_adapted_basis_empty_kernel():
    b = lattice.adapted_basis([], 3)
    assert b.complement_projection == lattice.identity(3)


def random_saturated(rng, m, r):
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(r)]
        if lattice.rank(rows) == r and lattice.is_saturated(rows):
            return rows


@pytest.mark.parametrize("seed", range(20))
def test_adapted_basis_invariants_and_round_trip(seed):
    rng = random.Random(seed)
    m = rng.randint(2, 6)
    r = rng.randint(1, m - 1)
    kernel = random_saturated(rng, m, r)
    b = lattice.adapted_basis(kernel, m)
    proj = b.complement_projection
    assert all(not any(lattice.matvec(proj, k)) for k in b.kernel_basis)
    assert lattice.invariant_factors(proj) == (1,) * (m - r)
    assert abs(lattice.determinant(b.change_of_basis)) == 1
    for _ in range(5):
        x = tuple(rng.randint(-9, 9) for _ in range(m))
        comp, kern = b.decompose(x)
        assert comp == lattice.matvec(proj, x)
        assert b.compose(comp, kern) == x


def test_saturation():
    assert lattice.saturation([(2, 2)], 2) == ((1, 1),)
    assert lattice.is_saturated([(1, 1)])
    assert not lattice.is_saturated([(2, 0)])


def test_unimodular_inverse():
    u = [[2, 1], [1, 1]]
    inv = lattice.unimodular_inverse(u)
    assert lattice.matmul(u, inv) == lattice.identity(2)
    with pytest.raises(ValueError):
        lattice.unimodular_inverse([[2, 0], [0, 1]])
