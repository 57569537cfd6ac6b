from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from csmkit import catalogs as cat
from csmkit import matrices as mx
from csmkit import normalforms as nf
from csmkit.engine import (
    IndexCapError,
    NotACoincidenceError,
    Submodule,
    csl_square_root_witness,
    divisibility_report,
    gauss_reduce,
    intersect_csm,
    is_scaled_rotated_copy,
    is_similar_sublattice_2d,
    oracle_index,
    sigma,
    sum_index,
)
from csmkit.maps import (
    UnsupportedModuleError,
    identity_map,
    inverse,
    make_coincidence,
    make_similarity,
)
from csmkit.verify import random_maps

SQ = cat.standard_lattice("square")
HEX = cat.standard_lattice("hexagonal")


def test_intersect_identity():
    csm = intersect_csm(identity_map(SQ))
    assert csm.basis == mx.identity(2) and csm.index == 1


def test_intersect_examples():
    t = cat.planar_unit_rotation("gaussian", 2, 1)
    csm = intersect_csm(t, cross_check=True)
    assert csm.index == 5 == oracle_index(csm.basis)
    assert nf.is_hnf(csm.basis)
    q = intersect_csm(cat.quaternion_rotation(1, 1, 1, 0), cross_check=True)
    assert q.index == 3 == oracle_index(q.basis)


def test_sigma_examples():
    assert sigma(identity_map(SQ)) == 1
    e = cat.planar_unit_rotation("eisenstein", 3, 1)
    assert sigma(e) == 7 == oracle_index(intersect_csm(e).basis)
    for entry in cat.enumerate_coincidence("hexagonal", 20):
        assert sigma(entry.map) == sigma(inverse(entry.map))


def test_sigma_of_similarity_needs_coincidence():
    with pytest.raises(NotACoincidenceError):
        sigma(make_similarity(SQ, ((1, -1), (1, 1))))


def test_sum_index_examples():
    assert sum_index(identity_map(SQ)) == 1
    assert sum_index(cat.planar_unit_rotation("gaussian", 2, 1)) == 5
    assert sum_index(cat.quaternion_rotation(1, 1, 1, 0)) == 3


def test_sum_index_on_modules():
    m = cat.cyclotomic_module(8)
    conj = cat.conjugation_map(m)
    f = cat.multiplication_map(m, [2, 1, 0, 0])
    from csmkit.maps import compose, is_coincidence

    t = is_coincidence(compose(f, inverse(compose(compose(conj, f), conj))))
    assert t is not None
    assert sum_index(t) == sigma(t) == sigma(inverse(t)) > 1


def test_oracle_examples():
    assert oracle_index(mx.identity(3)) == 1
    assert oracle_index(((2, 0), (0, 3))) == 6
    h = ((2, 1, 0), (0, 3, 1), (1, 0, 2))
    assert abs(mx.det_bareiss(h)) == 13 and oracle_index(h) == 13
    h12 = ((2, 0, 0), (1, 3, 0), (0, 1, 2))
    assert oracle_index(h12) == 12
    with pytest.raises(IndexCapError):
        oracle_index(((1001, 0), (0, 1000)))


@settings(max_examples=60)
@given(st.lists(st.integers(-6, 6), min_size=9, max_size=9))
def test_oracle_agrees_with_hnf(entries):
    h = mx.to_matrix([entries[0:3], entries[3:6], entries[6:9]])
    det = mx.det_bareiss(h)
    if det == 0 or abs(det) > 2000:
        return
    assert oracle_index(h) == abs(det) == abs(mx.det_bareiss(nf.hnf(h)[0]))


def test_divisibility_examples():
    rep = divisibility_report(identity_map(SQ))
    assert (rep.den_r, rep.den_rinv, rep.sigma) == (1, 1, 1) and rep.passed
    rep = divisibility_report(cat.planar_unit_rotation("gaussian", 2, 1))
    assert (rep.den_r, rep.den_rinv, rep.sigma) == (5, 5, 5) and rep.passed
    assert rep.checks["sigma_equals_den"]
    rep = divisibility_report(cat.quaternion_rotation(1, 1, 1, 0))
    assert (rep.den_r, rep.den_rinv, rep.sigma) == (3, 3, 3) and rep.passed
    assert "sigma_equals_den" not in rep.checks
    assert rep.consistent()
    with pytest.raises(NotACoincidenceError):
        divisibility_report(make_similarity(SQ, ((1, -1), (1, 1))))
    with pytest.raises(UnsupportedModuleError):
        divisibility_report(identity_map(cat.cyclotomic_module(8)))


def test_divisibility_random_maps():
    for label, t in random_maps(11, 30):
        rep = divisibility_report(t, label)
        assert rep.passed, rep.to_json()
        assert rep.consistent()


def test_den_asymmetry_example_satisfies_relations():
    # lattice P Z^3 with an explicit map where den(R) != den(R^-1)
    gram = ((21, -1, 1), (-1, 30, 11), (1, 11, 17))
    t = ((Fraction(-44, 45), Fraction(8, 45), Fraction(-7, 45)),
         (Fraction(-13, 45), Fraction(-23, 45), Fraction(19, 45)),
         (Fraction(11, 45), Fraction(-38, 45), Fraction(-10, 9)))
    from csmkit.gram import lattice_from_gram

    rep = divisibility_report(make_coincidence(lattice_from_gram(gram), t))
    assert (rep.den_r, rep.den_rinv, rep.sigma) == (45, 225, 225)
    assert rep.passed


def test_gauss_reduce():
    assert gauss_reduce(1, 0, 1) == (1, 0, 1)
    assert gauss_reduce(5, 7, 10) == (1, 0, 1)  # determinant 1, so equivalent to x^2 + y^2
    a, b, c = gauss_reduce(2, 1, 2)
    assert (a, b, c) == (2, 1, 2)
    with pytest.raises(ValueError):
        gauss_reduce(1, 2, 1)


def test_similar_sublattice_examples():
    two = Submodule(SQ, ((2, 0), (0, 2)), 4)
    assert is_similar_sublattice_2d(SQ, two) == (True, 4)
    csl = intersect_csm(cat.planar_unit_rotation("gaussian", 2, 1))
    assert is_similar_sublattice_2d(SQ, csl) == (True, 5)
    rect = Submodule(SQ, ((2, 0), (0, 1)), 2)
    assert is_similar_sublattice_2d(SQ, rect) == (False, None)
    with pytest.raises(UnsupportedModuleError):
        is_similar_sublattice_2d(cat.standard_lattice("cubic"), rect)


def test_square_root_witness_examples():
    w = csl_square_root_witness(identity_map(SQ))
    assert w.similarity.matrix == mx.identity(2)
    w = csl_square_root_witness(cat.planar_unit_rotation("gaussian", 2, 1))
    assert w.similarity.s == 5 and w.symmetry == mx.identity(2)
    assert w.similarity.matrix == cat.gaussian_matrix(2, 1)
    assert nf.lattice_basis(w.similarity.matrix) == w.csl.basis
    w = csl_square_root_witness(cat.planar_unit_rotation("eisenstein", 3, 1))
    assert w.similarity.s == 7 and w.csl.index == 7
    assert w.similarity.matrix == cat.eisenstein_matrix(3, 1)


def test_csl_is_not_scaled_copy():
    for entry in cat.enumerate_coincidence("square", 30)[1:]:
        assert not is_scaled_rotated_copy(entry.map)
    assert is_scaled_rotated_copy(identity_map(SQ))


def test_index_identity_flag():
    for label, t in random_maps(5, 12):
        assert divisibility_report(t, label).checks["index_identity"]
