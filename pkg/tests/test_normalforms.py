from __future__ import annotations


import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from csmkit import matrices as mx
from csmkit import normalforms as nf
from csmkit.linalg import solve_linear
from csmkit.matrices import RankError
from csmkit.numberfield import QQ, quadratic_field


def square_int_matrices(min_size=1, max_size=5, bound=20):
    return st.integers(min_size, max_size).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n
        ).map(mx.to_matrix)
    )


def test_hnf_examples():
    h, u = nf.hnf(mx.identity(3))
    assert h == mx.identity(3) and u == mx.identity(3)
    h, _ = nf.hnf(((4, 2), (2, 4)))
    assert abs(mx.det_bareiss(h)) == 12 and nf.is_hnf(h)
    h, _ = nf.hnf(((2, 0), (0, 3)))
    assert h == ((2, 0), (0, 3))


def test_hnf_rank_deficient():
    with pytest.raises(RankError):
        nf.hnf(((1, 2), (2, 4)))


def test_snf_examples():
    d, _, _ = nf.snf(((2, 4), (0, 6)))
    assert d == ((2, 0), (0, 6))
    assert nf.snf(mx.identity(2))[0] == mx.identity(2)
    assert nf.snf(((0, 0), (0, 0)))[0] == ((0, 0), (0, 0))


@settings(max_examples=150)
@given(m=square_int_matrices())
def test_hnf_and_snf_preserve_determinant(m):
    det = mx.det_bareiss(m)
    d, u, v = nf.snf(m)
    assert mx.matmul(mx.matmul(u, m), v) == d
    assert nf.is_unimodular(u) and nf.is_unimodular(v)
    diag = [d[i][i] for i in range(len(d))]
    assert all((b % a == 0) if a else b == 0 for a, b in zip(diag, diag[1:]))
    prod = 1
    for x in diag:
        prod *= x
    assert abs(prod) == abs(det)
    if det == 0:
        return
    h, u = nf.hnf(m)
    assert mx.matmul(m, u) == h
    assert nf.is_unimodular(u) and nf.is_hnf(h)
    assert abs(mx.det_bareiss(h)) == abs(det)
    assert nf.hnf(h)[0] == h


@settings(max_examples=60)
@given(m=square_int_matrices(2, 4, 9), data=st.data())
def test_hnf_is_a_lattice_invariant(m, data):
    assume(mx.det_bareiss(m) != 0)
    n = len(m)
    # random unimodular column operations
    u = mx.identity(n)
    for _ in range(4):
        i, j = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
        if i != j:
            c = data.draw(st.integers(-3, 3))
            e = [list(r) for r in mx.identity(n)]
            e[i][j] = c
            u = mx.matmul(u, mx.to_matrix(e))
    assert nf.hnf(mx.matmul(m, u))[0] == nf.hnf(m)[0]


def test_lattice_basis_of_redundant_generators():
    h = nf.lattice_basis(((2, 0, 4, 1), (0, 3, 6, 0)))
    assert h == nf.hnf(((1, 0), (0, 3)))[0]


def test_integer_kernel_and_saturation():
    ker = nf.integer_kernel(((1, 1, 1),))
    assert len(ker[0]) == 2
    assert all(sum(ker[r][c] for r in range(3)) == 0 for c in range(2))
    sat = nf.saturation([(2, 4), (0, 0)])
    assert sat == [(1, 2)] or sat == [(-1, -2)]


def test_solve_linear_examples():
    res = solve_linear(((1, 0), (0, 1)), ((3,), (-2,)), QQ)
    assert [r[0] for r in res.particular] == [3, -2] and res.unique
    res = solve_linear(((1, 1),), ((0,),), QQ)
    assert res.dimension == 1
    (v,) = res.kernel
    assert v[0] == -v[1] != 0
    k = quadratic_field(2)
    a = k.gen
    res = solve_linear(((a, -1), (0, 0)), ((0,), (0,)), k)
    (v,) = res.kernel
    assert v[1] == a * v[0] and v[0] != 0


def test_solve_linear_inconsistent():
    assert solve_linear(((1, 1), (1, 1)), ((0,), (1,)), QQ) is None


def test_solve_linear_rational_mode():
    k = quadratic_field(2)
    a = k.gen
    # x + a y = 0 has no nonzero rational solution
    res = solve_linear(((1, a),), ((0,),), k, rational=True)
    assert res.unique and all(r[0] == 0 for r in res.particular)
    assert solve_linear(((1, a),), ((0,),), k).dimension == 1
