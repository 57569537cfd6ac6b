"""Small exact dense-matrix helpers.

Matrices are tuples of row tuples. Entries may be ``int``, ``Fraction`` or
:class:`~csmkit.numberfield.NumberFieldElement`; every routine here only uses
ring/field operators, so it works for all three. Nothing here is meant for
large matrices; the build never goes beyond 20x20.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Sequence

Matrix = tuple  # tuple[tuple[entry, ...], ...]


class RankError(ValueError):
    """Raised when a matrix is not of the required rank."""


def to_matrix(rows: Sequence[Sequence], conv: Callable = lambda v: v) -> Matrix:
    rows = [tuple(conv(v) for v in row) for row in rows]
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return tuple(rows)


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def identity(n: int, one=1, zero=0) -> Matrix:
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(r: int, c: int, zero=0) -> Matrix:
    return tuple((zero,) * c for _ in range(r))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if shape(a)[1] != shape(b)[0]:
        raise ValueError(f"shape mismatch {shape(a)} @ {shape(b)}")
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x != 0 and y != 0:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def matvec(a: Matrix, v: Sequence) -> tuple:
    return tuple(sum((x * y for x, y in zip(row, v) if x != 0 and y != 0), 0) for row in a)


def scale(m: Matrix, c) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in m)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def is_zero(m: Matrix) -> bool:
    return all(x == 0 for row in m for x in row)


def column(m: Matrix, j: int) -> tuple:
    return tuple(row[j] for row in m)


def from_columns(cols: Sequence[Sequence]) -> Matrix:
    return transpose(tuple(tuple(c) for c in cols))


def hstack(a: Matrix, b: Matrix) -> Matrix:
    return tuple(ra + rb for ra, rb in zip(a, b))


def vstack(a: Matrix, b: Matrix) -> Matrix:
    return tuple(a) + tuple(b)


def is_symmetric(m: Matrix) -> bool:
    n, c = shape(m)
    return n == c and all(m[i][j] == m[j][i] for i in range(n) for j in range(i))


# --- integer / rational specifics -------------------------------------------


def as_fractions(m: Matrix) -> Matrix:
    return to_matrix(m, Fraction)


def split_denominator(m: Matrix) -> tuple[Matrix, int]:
    """``(n, q)`` with ``m == n / q``, ``n`` integral and ``q`` the lcm of the denominators."""
    q = denominator_lcm(m)
    return tuple(tuple(int(Fraction(x) * q) for x in row) for row in m), q


def denominator_lcm(m: Matrix) -> int:
    out = 1
    for row in m:
        for x in row:
            out = lcm(out, Fraction(x).denominator)
    return out


def content(m: Matrix) -> int:
    g = 0
    for row in m:
        for x in row:
            g = gcd(g, int(x))
    return g


def is_integral(m: Matrix) -> bool:
    return all(Fraction(x).denominator == 1 for row in m for x in row)


def to_int(m: Matrix) -> Matrix:
    if not is_integral(m):
        raise ValueError("matrix has non-integral entries")
    return to_matrix(m, lambda x: int(Fraction(x)))


def det_bareiss(m: Matrix) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    n, c = shape(m)
    if n != c:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# --- elimination over a field -------------------------------------------------


def _is_nonzero(x) -> bool:
    return x != 0


def row_reduce(m: Matrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over a field; returns (rows, pivot columns)."""
    a = [list(row) for row in m]
    rows, cols = shape(m)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if _is_nonzero(a[i][c])), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c] if not isinstance(a[r][c], int) else Fraction(1, a[r][c])
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and _is_nonzero(a[i][c]):
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Matrix) -> int:
    return len(row_reduce(m)[1]) if m else 0


def kernel(m: Matrix, one=Fraction(1), zero=Fraction(0)) -> list[tuple]:
    """Basis of the right kernel ``{x : m x = 0}`` over the field of the entries."""
    _, cols = shape(m)
    red, pivots = row_reduce(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * cols
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(tuple(v))
    return basis


def solve(a: Matrix, b: Matrix, one=Fraction(1), zero=Fraction(0)):
    """Solve ``a x = b`` for a matrix right-hand side.

    Returns ``(particular, kernel_basis)`` or ``None`` when inconsistent;
    ``particular`` has the shape of ``x`` (columns of ``a`` by columns of ``b``).
    """
    rows, cols = shape(a)
    nrhs = shape(b)[1]
    aug = tuple(tuple(ra) + tuple(rb) for ra, rb in zip(a, b))
    red, pivots = row_reduce(aug)
    if any(p >= cols for p in pivots):
        return None
    x = [[zero] * nrhs for _ in range(cols)]
    for r, p in enumerate(pivots):
        for j in range(nrhs):
            x[p][j] = red[r][cols + j]
    return tuple(tuple(row) for row in x), kernel(a, one, zero)


def inverse(m: Matrix, one=Fraction(1), zero=Fraction(0)) -> Matrix:
    n, c = shape(m)
    if n != c:
        raise RankError("inverse of a non-square matrix")
    res = solve(m, identity(n, one, zero), one, zero)
    if res is None or res[1]:
        raise RankError("matrix is singular")
    return res[0]


def det(m: Matrix, one=Fraction(1)):
    """Determinant over a field by elimination (Fraction or field entries)."""
    n, c = shape(m)
    if n != c:
        raise ValueError("determinant of a non-square matrix")
    a = [list(row) for row in m]
    result = one
    for k in range(n):
        p = next((i for i in range(k, n) if _is_nonzero(a[i][k])), None)
        if p is None:
            return one * 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            result = -result
        piv = a[k][k]
        result = result * piv
        for i in range(k + 1, n):
            if _is_nonzero(a[i][k]):
                f = a[i][k] / piv if not isinstance(piv, int) else Fraction(a[i][k], piv)
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return result


def to_str(m: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in m) + "]"
