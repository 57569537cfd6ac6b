from __future__ import annotations

import random
from fractions import Fraction

import pytest

from csmkit import catalogs as cat
from csmkit import matrices as mx
from csmkit.engine import sigma
from csmkit.gram import (
    DependenceError,
    GeneratorPresentation,
    GramModule,
    ModuleValidationError,
    ambient_dimension,
    lattice_from_gram,
    module_from_generators,
    module_from_json,
    module_to_json,
)
from csmkit.maps import make_coincidence
from csmkit.matrices import RankError
from csmkit.numberfield import minimal_polynomial, quadratic_field
from csmkit.scaling import multiplier_ring

Q2 = quadratic_field(2)


def test_lattice_examples():
    sq = lattice_from_gram([[1, 0], [0, 1]])
    assert sq.is_lattice and sq.rank == 2 and ambient_dimension(sq) == 2
    hexa = lattice_from_gram([[2, 1], [1, 2]])
    assert hexa.is_lattice
    with pytest.raises(ModuleValidationError):
        lattice_from_gram([[1, 2], [2, 1]])
    with pytest.raises(ModuleValidationError):
        lattice_from_gram([[1, 1], [0, 1]])


def test_z_sqrt2_module():
    p = GeneratorPresentation(Q2, "real", 1, ((Q2.one,), (Q2.gen,)))
    m = module_from_generators(p)
    assert m.gram == mx.to_matrix([[1, Q2.gen], [Q2.gen, 2]], Q2.coerce)
    assert m.rank == 2 and ambient_dimension(m) == 1 and not m.is_lattice


def test_xi8_module_from_generators():
    m = module_from_generators(cat.xi8_presentation())
    assert m.rank == 4 and ambient_dimension(m) == 2
    assert m.gram[0][1] == Q2.gen / 2
    assert m.gram[0][2] == 0
    assert m == cat.cyclotomic_module(8)


def test_dependent_generators():
    with pytest.raises(DependenceError):
        module_from_generators(GeneratorPresentation(Q2, "real", 1, ((Q2(1),), (Q2(2),))))


def test_span_deficiency():
    p = GeneratorPresentation(Q2, "real", 2, ((Q2(1), Q2(0)), (Q2.gen, Q2(0))))
    with pytest.raises(RankError):
        module_from_generators(p)


def test_leading_minors_positive_for_lattices():
    for name in cat.LATTICES:
        g = cat.standard_lattice(name).rational_gram()
        for n in range(1, len(g) + 1):
            assert mx.det(tuple(row[:n] for row in g[:n])) > 0


def _permute(m: GramModule, perm) -> GramModule:
    g = tuple(tuple(m.gram[perm[i]][perm[j]] for j in range(m.rank)) for i in range(m.rank))
    return GramModule(m.field, g)


def _perm_matrix(perm) -> mx.Matrix:
    # column i of P is e_{perm[i]}: new generator i is old generator perm[i]
    n = len(perm)
    return tuple(tuple(int(perm[c] == r) for c in range(n)) for r in range(n))


def test_permutation_invariance():
    rng = random.Random(7)
    for m, t in (
        (cat.standard_lattice("cubic"), cat.quaternion_rotation(1, 1, 1, 0).matrix),
        (cat.cyclotomic_module(8), None),
        (cat.xi8_index4_submodule(), None),
    ):
        ring = multiplier_ring(m)
        for _ in range(20 if t is not None else 4):
            perm = list(range(m.rank))
            rng.shuffle(perm)
            pm = _permute(m, perm)
            p = mx.as_fractions(_perm_matrix(perm))
            assert pm.gram == m.sublattice_gram(_perm_matrix(perm))
            pring = multiplier_ring(pm)
            assert sorted(map(minimal_polynomial, pring.scalars)) == sorted(map(minimal_polynomial, ring.scalars))
            if t is not None:
                tp = mx.matmul(mx.matmul(mx.inverse(p), t), p)
                assert sigma(make_coincidence(pm, tp)) == 3


def test_unimodular_change_of_basis():
    m = cat.standard_lattice("square")
    u = mx.as_fractions(((2, 1), (1, 1)))
    mu = lattice_from_gram(mx.matmul(mx.matmul(mx.transpose(u), m.rational_gram()), u))
    t = cat.planar_unit_rotation("gaussian", 3, 2).matrix
    tu = mx.matmul(mx.matmul(mx.inverse(u), t), u)
    assert sigma(make_coincidence(mu, tu)) == 13
    assert multiplier_ring(mu).rank == 1


def test_json_round_trip():
    for m in (cat.standard_lattice("hexagonal"), cat.eta_module(), cat.cyclotomic_module(12)):
        back = module_from_json(module_to_json(m))
        assert back == m and back.label == m.label
    data = {"field": {"min_poly": ["-2", "0", "1"], "root_interval": ["1", "2"]},
            "generators": {"ambient": "real", "dim": 1, "vectors": [[["1", "0"]], [["0", "1"]]]}}
    assert module_from_json(data).rank == 2
    with pytest.raises(ModuleValidationError):
        module_from_json({"label": "empty"})


def test_rational_gram_fraction_entries():
    m = lattice_from_gram([[Fraction(1, 2), 0], [0, 3]])
    assert m.rational_gram()[0][0] == Fraction(1, 2)
