"""Exact integer linear algebra on small lattices.

Matrices are plain tuples of row tuples of Python ints.  Everything here is
exact; there is no floating point anywhere in the module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, NotSaturated

IntMatrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and len({len(r) for r in m}) != 1:
        raise DimensionMismatch("ragged matrix")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_inverse(m: Sequence[Sequence]) -> tuple:
    """Inverse over Q by Gauss-Jordan; raises ValueError if singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def unimodular_inverse(m: Sequence[Sequence[int]]) -> IntMatrix:
    inv = rational_inverse(m)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``.

    ``D`` is diagonal with non-negative entries and each diagonal entry
    divides the next; ``U`` and ``V`` are unimodular.
    """
    d = [list(row) for row in as_matrix(m)]
    if not d or not d[0]:
        raise DimensionMismatch("smith_normal_form needs a non-empty matrix")
    rows, cols = len(d), len(d[0])
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(cols)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row[dst] += q * row[src]
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col[dst] += q * col[src]
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = d[t][t]
            clean = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    clean = clean and d[i][t] == 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    clean = clean and d[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if d[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return as_matrix(u), as_matrix(d), as_matrix(v)


def invariant_factors(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero diagonal entries of the Smith normal form."""
    _, d, _ = smith_normal_form(m)
    return tuple(d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i])


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form: return ``(H, U)`` with ``U @ M == H``.

    Nonzero rows of ``H`` come first, each pivot is positive and strictly
    right of the previous one, and entries above a pivot lie in ``[0, pivot)``.
    """
    h = [list(row) for row in as_matrix(m)]
    rows = len(h)
    cols = len(h[0]) if h else 0
    u = [list(r) for r in identity(rows)]
    k = 0
    for j in range(cols):
        if k == rows:
            break
        while True:
            nz = [(abs(h[i][j]), i) for i in range(k, rows) if h[i][j]]
            if not nz:
                break
            _, i = min(nz)
            h[k], h[i] = h[i], h[k]
            u[k], u[i] = u[i], u[k]
            done = True
            for i in range(k + 1, rows):
                if h[i][j]:
                    q = h[i][j] // h[k][j]
                    h[i] = [x - q * y for x, y in zip(h[i], h[k])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[k])]
                    done = done and h[i][j] == 0
            if done:
                break
        if not any(h[i][j] for i in range(k, rows)):
            continue
        if h[k][j] < 0:
            h[k] = [-x for x in h[k]]
            u[k] = [-x for x in u[k]]
        for i in range(k):
            q = h[i][j] // h[k][j]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[k])]
                u[i] = [x - q * y for x, y in zip(u[i], u[k])]
        k += 1
    return as_matrix(h), as_matrix(u)


def rank(m: Sequence[Sequence[int]]) -> int:
    if not m:
        return 0
    h, _ = hermite_normal_form(m)
    return sum(1 for row in h if any(row))


def kernel_basis(m: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Basis of the integer kernel ``{k : M k = 0}`` as rows.

    The basis is saturated and returned in Hermite normal form, so the output
    is canonical for the kernel lattice.  A matrix with no rows needs
    ``ncols``; its kernel is the whole lattice.
    """
    m = as_matrix(m)
    if not m:
        if ncols is None:
            raise DimensionMismatch("ncols is required for a matrix without rows")
        return identity(ncols)
    if ncols is not None and ncols != len(m[0]):
        raise DimensionMismatch(f"matrix has {len(m[0])} columns, expected {ncols}")
    h, u = hermite_normal_form(transpose(m))
    r = sum(1 for row in h if any(row))
    ker = u[r:]
    if not ker:
        return ()
    return tuple(row for row in hermite_normal_form(ker)[0] if any(row))


def saturation(vectors: Sequence[Sequence[int]], dim: int) -> IntMatrix:
    """Basis (HNF rows) of the integer points in the rational span of ``vectors``."""
    vectors = [v for v in as_matrix(vectors) if any(v)]
    if not vectors:
        return ()
    perp = kernel_basis(vectors, dim)
    if not perp:
        return identity(dim)
    return kernel_basis(perp, dim)


def is_saturated(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff ``vectors`` are independent and span a primitive sublattice."""
    vectors = as_matrix(vectors)
    if not vectors:
        return True
    inv = invariant_factors(vectors)
    return len(inv) == len(vectors) and all(x == 1 for x in inv)


@dataclass(frozen=True)
class AdaptedBasis:
    """A splitting of ``Z^m`` into a sublattice and a complement.

    ``change_of_basis`` has columns ``(w_1, ..., w_s, k_1, ..., k_r)`` where
    the ``k_i`` are ``kernel_basis`` and the ``w_j`` are lifts of the standard
    basis of ``Z^s`` through ``complement_projection``.
    """

    kernel_basis: IntMatrix
    complement_projection: IntMatrix
    change_of_basis: IntMatrix

    @property
    def dim(self) -> int:
        return len(self.change_of_basis)

    @property
    def rank(self) -> int:
        return len(self.kernel_basis)

    def decompose(self, x: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Coordinates of ``x`` as (complement part, kernel part)."""
        if len(x) != self.dim:
            raise DimensionMismatch(f"vector of length {len(x)} in Z^{self.dim}")
        coords = matvec(unimodular_inverse(self.change_of_basis), x)
        s = self.dim - self.rank
        return tuple(coords[:s]), tuple(coords[s:])

    def compose(self, complement: Sequence[int], kernel: Sequence[int]) -> tuple[int, ...]:
        return matvec(self.change_of_basis, tuple(complement) + tuple(kernel))


def adapted_basis(kernel: Sequence[Sequence[int]], m: int) -> AdaptedBasis:
    """Split ``Z^m`` along the sublattice spanned by ``kernel``.

    The complement projection is the Hermite normal form of the annihilator
    of the kernel, so it is determined by the kernel lattice alone.  When the
    annihilator has unit pivots this is a coordinate projection.

    Raises NotSaturated if ``Z^m / <kernel>`` has torsion.
    """
    kernel = as_matrix(kernel)
    if any(len(k) != m for k in kernel):
        raise DimensionMismatch(f"kernel vectors must have length {m}")
    if not kernel:
        return AdaptedBasis((), identity(m), identity(m))
    inv = invariant_factors(kernel)
    if len(inv) != len(kernel):
        raise ValueError("kernel vectors are linearly dependent")
    torsion = tuple(x for x in inv if x != 1)
    if torsion:
        raise NotSaturated(torsion)
    s = m - len(kernel)
    if s == 0:
        proj: IntMatrix = ()
        lifts: list[tuple[int, ...]] = []
    else:
        proj = kernel_basis(kernel, m)
        # U P V = [I 0]  =>  P (V[:, :s] U) = I
        u, _, v = smith_normal_form(proj)
        lifts = list(transpose(matmul(tuple(row[:s] for row in v), u)))
    columns = lifts + list(kernel)
    return AdaptedBasis(kernel, proj, transpose(columns))
