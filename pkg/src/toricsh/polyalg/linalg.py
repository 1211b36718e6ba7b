"""Dense exact linear algebra over Q(q).

Determinants use Bareiss fraction-free elimination and characteristic
polynomials use the division-free Berkowitz recursion, so no spurious
denominators are introduced along the way.
"""

from __future__ import annotations

import logging
from typing import Sequence

from toricsh.coeffs import ONE, ZERO, RatFunc
from toricsh.polyalg.polys import MPoly

logger = logging.getLogger(__name__)

Vector = tuple[RatFunc, ...]
Matrix = tuple[tuple[RatFunc, ...], ...]


def to_matrix(rows: Sequence[Sequence[object]]) -> Matrix:
    """Build a matrix from rows of RatFunc, int or Fraction entries."""
    return tuple(
        tuple(v if isinstance(v, RatFunc) else RatFunc.of(v) for v in row)  # type: ignore[arg-type]
        for row in rows
    )


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return ()
    cols = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = ZERO
            for x, y in zip(row, col):
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c: RatFunc) -> Matrix:
    return tuple(tuple(x * c for x in row) for row in a)


def mat_vec(a: Matrix, v: Sequence[RatFunc]) -> Vector:
    out = []
    for row in a:
        acc = ZERO
        for x, y in zip(row, v):
            if not x.is_zero() and not y.is_zero():
                acc = acc + x * y
        out.append(acc)
    return tuple(out)


def mat_pow(a: Matrix, exponent: int) -> Matrix:
    result = identity(len(a))
    base = a
    while exponent:
        if exponent & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        exponent >>= 1
    return result


def trace(a: Matrix) -> RatFunc:
    acc = ZERO
    for i, row in enumerate(a):
        acc = acc + row[i]
    return acc


def is_zero_matrix(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def bareiss_det(a: Matrix) -> RatFunc:
    """Determinant by Bareiss elimination with exact division by the previous pivot."""
    n = len(a)
    if n == 0:
        return ONE
    m = [list(row) for row in a]
    sign = ONE
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (pivot * m[i][j] - m[i][k] * m[k][j]) / prev
            m[i][k] = ZERO
        prev = pivot
    return sign * m[n - 1][n - 1]


def berkowitz(a: Matrix) -> list[RatFunc]:
    """Coefficients [1, c1, ..., cn] of det(t*I - a), highest power first.

    Uses only ring operations: the trailing principal submatrices are
    processed from the bottom right, each step multiplying by a lower
    triangular Toeplitz matrix.
    """
    n = len(a)
    poly = [ONE]
    for k in range(n - 1, -1, -1):
        size = n - k
        a_kk = a[k][k]
        row = [a[k][j] for j in range(k + 1, n)]
        col = [a[i][k] for i in range(k + 1, n)]
        sub = tuple(tuple(a[i][j] for j in range(k + 1, n)) for i in range(k + 1, n))
        # first column of the Toeplitz factor: 1, -a_kk, -R C, -R A C, ...
        column = [ONE, -a_kk]
        vec = tuple(col)
        for _ in range(size - 1):
            acc = ZERO
            for x, y in zip(row, vec):
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            column.append(-acc)
            vec = mat_vec(sub, vec)
        new_poly = []
        for i in range(size + 1):
            acc = ZERO
            for j in range(min(i + 1, len(poly))):
                c = column[i - j]
                if not c.is_zero() and not poly[j].is_zero():
                    acc = acc + c * poly[j]
            new_poly.append(acc)
        poly = new_poly
    return poly


def char_poly(mat: Matrix, var: str = "t") -> MPoly:
    """Monic characteristic polynomial det(t*I - mat) as a polynomial in ``var``."""
    coeffs = berkowitz(mat)
    n = len(coeffs) - 1
    return MPoly((var,), {(n - i,): c for i, c in enumerate(coeffs)})


def eval_poly_at_matrix(p: MPoly, mat: Matrix) -> Matrix:
    """Evaluate a univariate polynomial at a square matrix by Horner's rule."""
    if p.nvars != 1:
        raise ValueError("expected a univariate polynomial")
    n = len(mat)
    degree = p.total_degree()
    result = zeros(n, n)
    for e in range(degree, -1, -1):
        result = mat_add(mat_mul(result, mat), mat_scale(identity(n), p.coefficient((e,))))
    return result


def rref(a: Matrix) -> tuple[list[list[RatFunc]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot_row = next((i for i in range(r, rows) if not m[i][c].is_zero()), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero():
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def nullspace(a: Matrix, cols: int | None = None) -> list[Vector]:
    """Basis of {v : a v = 0}."""
    ncols = cols if cols is not None else (len(a[0]) if a else 0)
    if not a:
        return [tuple(ONE if i == j else ZERO for i in range(ncols)) for j in range(ncols)]
    reduced, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis
