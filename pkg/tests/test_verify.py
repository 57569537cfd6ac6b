from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from csmkit import matrices as mx
from csmkit import verify as vf
from csmkit.maps import is_coincidence

SMALL = vf.VerifyConfig(random_maps=24, pairs_per_lattice=10, planar_sigma_max=20, cubic_norm_max=12, ssl_sigma_max=20, pool_size=20)


@given(st.integers(0, 2**32), st.sampled_from([2, 3, 4]))
def test_random_orthogonal_is_exact(seed, d):
    r = vf.random_orthogonal(random.Random(seed), d)
    assert mx.matmul(mx.transpose(r), r) == mx.identity(d)
    assert abs(mx.det(r)) == 1


@given(st.integers(0, 2**32), st.integers(2, 6))
def test_pythagorean_rotation(seed, d):
    r = vf.pythagorean_rotation(random.Random(seed), d)
    assert mx.matmul(mx.transpose(r), r) == mx.identity(d)
    assert mx.det(r) == 1


@given(st.integers(0, 2**32), st.sampled_from([2, 3, 4]))
def test_random_basis_full_rank(seed, d):
    p = vf.random_basis(random.Random(seed), d)
    assert mx.det(p) != 0


def test_random_maps_deterministic_and_valid():
    a = vf.random_maps(5, 12)
    b = vf.random_maps(5, 12)
    assert [(l, t.matrix) for l, t in a] == [(l, t.matrix) for l, t in b]
    assert {t.module.rank for _, t in a} == {2, 3, 4}
    for _, t in a:
        assert is_coincidence(t) is not None


def test_random_maps_depend_on_seed():
    a = vf.random_maps(1, 6)
    b = vf.random_maps(2, 6)
    assert [t.matrix for _, t in a] != [t.matrix for _, t in b]


@pytest.mark.parametrize("name", ["square", "hexagonal", "cubic", "hypercubic4"])
def test_similarity_pool(name):
    pool = vf.similarity_pool(name, random.Random(0), 20)
    assert len(pool) >= 20
    assert all(f.module.label == name for _, f in pool)


def test_claim_keeps_minimal_counterexample():
    c = vf.Claim("x")
    c.record(False, (5,), lambda: {"k": 5})
    c.record(False, (3,), lambda: {"k": 3})
    c.record(False, (9,), lambda: {"k": 9})
    c.record(True)
    assert (c.passed, c.failed) == (1, 3)
    assert c.counterexample == {"k": 3}
    assert not c.ok


def test_empty_claim_is_not_ok():
    assert not vf.Claim("x").ok


@pytest.mark.parametrize("suite", vf.SUITES)
def test_small_suites_pass(suite):
    (res,) = vf.run_suites(suite, SMALL)
    bad = {n: c.to_json() for n, c in res.claims.items() if not c.ok}
    assert res.ok, bad


def test_suite_output_is_deterministic():
    a = vf.run_suites("sigma-inv", SMALL)[0].to_json()
    b = vf.run_suites("sigma-inv", SMALL)[0].to_json()
    assert a == b


def test_unknown_suite():
    with pytest.raises(ValueError):
        vf.run_suites("nope", SMALL)
