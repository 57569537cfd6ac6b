"""Hermite and Smith normal forms of integer matrices, with transforms.

Column convention throughout: a lattice is generated by the *columns* of its
basis matrix. The Hermite normal form ``h`` of a full-column-rank ``m`` is the
unique lower-triangular matrix with positive diagonal and
``0 <= h[i][j] < h[i][i]`` for ``j < i`` such that ``m @ u == h`` for some
unimodular ``u``.
"""

from __future__ import annotations

from typing import Sequence

from . import matrices as mx
from .matrices import Matrix, RankError


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _col_combine(a: list[list[int]], i: int, j: int, p: int, q: int, r: int, s: int) -> None:
    # (col_i, col_j) <- (p*col_i + q*col_j, r*col_i + s*col_j)
    for row in a:
        x, y = row[i], row[j]
        row[i] = p * x + q * y
        row[j] = r * x + s * y


def column_echelon(m: Matrix) -> tuple[Matrix, Matrix, list[int]]:
    """Column-style Hermite reduction of an arbitrary integer matrix.

    Returns ``(h, u, pivot_rows)`` with ``m @ u == h``, ``u`` unimodular. The
    first ``len(pivot_rows)`` columns of ``h`` are the reduced basis of the
    column lattice, the remaining columns are zero (so the matching columns
    of ``u`` span the integer kernel).
    """
    rows, cols = mx.shape(m)
    h = [list(map(int, row)) for row in m]
    u = [[int(i == j) for j in range(cols)] for i in range(cols)]
    pivot_rows: list[int] = []
    r = 0
    for i in range(rows):
        if r == cols:
            break
        for j in range(r + 1, cols):
            b = h[i][j]
            if b == 0:
                continue
            a = h[i][r]
            g, x, y = ext_gcd(a, b)
            p, q, rr, s = x, y, -b // g, a // g
            _col_combine(h, r, j, p, q, rr, s)
            _col_combine(u, r, j, p, q, rr, s)
        piv = h[i][r]
        if piv == 0:
            continue
        if piv < 0:
            for mat in (h, u):
                for row in mat:
                    row[r] = -row[r]
            piv = -piv
        for c in range(r):
            f = h[i][c] // piv
            if f:
                for mat in (h, u):
                    for row in mat:
                        row[c] -= f * row[r]
        pivot_rows.append(i)
        r += 1
    return mx.to_matrix(h), mx.to_matrix(u), pivot_rows


def hnf(m: Matrix) -> tuple[Matrix, Matrix]:
    """Column Hermite normal form ``(h, u)`` of a full-column-rank integer matrix."""
    h, u, piv = column_echelon(m)
    if len(piv) != mx.shape(m)[1]:
        raise RankError(f"matrix of shape {mx.shape(m)} has column rank {len(piv)}")
    return h, u


def lattice_basis(generators: Matrix) -> Matrix:
    """HNF basis (columns) of the lattice spanned by the columns of ``generators``."""
    h, _, piv = column_echelon(generators)
    k = len(piv)
    return tuple(row[:k] for row in h)


def integer_kernel(m: Matrix) -> Matrix:
    """Columns form a Z-basis of ``{x in Z^n : m x = 0}``."""
    _, u, piv = column_echelon(m)
    k = len(piv)
    return tuple(row[k:] for row in u)


def saturation(vectors: Sequence[Sequence]) -> list[tuple[int, ...]]:
    """Z-basis of ``span_Q(vectors) ∩ Z^n`` for rational vectors of length n."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    n = len(vectors[0])
    # orthogonal complement over Q, scaled to integers; its integer kernel is the saturation
    ortho = mx.kernel(mx.to_matrix(vectors))
    if not ortho:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rows = []
    for w in ortho:
        d = mx.denominator_lcm((w,))
        rows.append(tuple(int(x * d) for x in w))
    ker = integer_kernel(mx.to_matrix(rows))
    return [tuple(c) for c in mx.transpose(ker)]


def snf(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: ``(d, u, v)`` with ``u @ m @ v == d``, ``d[i][i] | d[i+1][i+1]``."""
    rows, cols = mx.shape(m)
    a = [list(map(int, row)) for row in m]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f*row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for mat in (a, v):
            for row in mat:
                row[dst] += f * row[src]

    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // piv))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // piv))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return mx.to_matrix(a), mx.to_matrix(u), mx.to_matrix(v)


def elementary_divisors(m: Matrix) -> list[int]:
    d, _, _ = snf(m)
    return [d[i][i] for i in range(min(mx.shape(m)))]


def is_hnf(h: Matrix) -> bool:
    n, c = mx.shape(h)
    if n != c:
        return False
    for i in range(n):
        if h[i][i] <= 0:
            return False
        for j in range(i + 1, n):
            if h[i][j] != 0:
                return False
        for j in range(i):
            if not 0 <= h[i][j] < h[i][i]:
                return False
    return True


def is_unimodular(u: Matrix) -> bool:
    return abs(mx.det_bareiss(u)) == 1
