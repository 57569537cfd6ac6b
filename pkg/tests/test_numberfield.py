from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from csmkit import polys
from csmkit.catalogs import eta_field, golden_field
from csmkit.numberfield import (
    QQ,
    FieldDomainError,
    FieldMismatchError,
    NumberField,
    compare_embedded,
    element_from_json,
    field_from_json,
    field_to_json,
    is_algebraic_integer,
    minimal_polynomial,
    quadratic_field,
    sqrt_in_field,
)

Q2 = quadratic_field(2)
SQ2 = Q2.gen

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elements(k):
    return st.lists(rationals, min_size=k.degree, max_size=k.degree).map(k.element)


FIELDS = [Q2, quadratic_field(3), golden_field(), eta_field()]


def test_compare_examples():
    assert compare_embedded(SQ2, Q2(1)) == 1
    assert compare_embedded(SQ2, SQ2) == 0
    assert compare_embedded(2 * SQ2, Q2(3)) == -1


def test_compare_mixed_fields():
    with pytest.raises(FieldMismatchError):
        compare_embedded(SQ2, quadratic_field(3).gen)


def test_minimal_polynomial_examples():
    assert minimal_polynomial(Q2(3)) == polys.poly([-3, 1])
    assert minimal_polynomial(2 * SQ2) == polys.poly([-8, 0, 1])
    assert minimal_polynomial(1 + SQ2) == polys.poly([-1, -2, 1])


def test_sqrt_examples():
    assert sqrt_in_field(Q2(2)) == SQ2
    assert sqrt_in_field(Q2(3)) is None
    assert sqrt_in_field(Q2(0)) == 0
    assert sqrt_in_field(3 + 2 * SQ2) == 1 + SQ2
    with pytest.raises(FieldDomainError):
        sqrt_in_field(Q2(-1))


def test_construction_validates():
    with pytest.raises(ValueError):
        NumberField((-4, 0, 1), 1, 3)  # x^2 - 4 is reducible
    with pytest.raises(ValueError):
        NumberField((-2, 0, 1), -2, 2)  # interval holds both roots
    with pytest.raises(ValueError):
        NumberField((-2, 0, 2), 1, 2)  # not monic


def test_eta_field_relation():
    r = eta_field().gen
    assert r**3 + 3 * r - 1 == 0
    assert 0 < float(r) < 1
    assert minimal_polynomial(1 / r) == polys.poly([-1, 0, -3, 1])


def test_resultant_oracle_for_norm_of_eta():
    # |eta|^2 = 1/r, so its minimal polynomial is Res_r(r^3 + 3r - 1, x r - 1)
    x, r = sympy.symbols("x r")
    res = sympy.Poly(sympy.resultant(r**3 + 3 * r - 1, x * r - 1, r), x).monic()
    ours = minimal_polynomial(1 / eta_field().gen)
    assert [Fraction(int(c.p), int(c.q)) for c in reversed(res.all_coeffs())] == list(ours)


@pytest.mark.parametrize("k", FIELDS, ids=lambda k: k.name)
@settings(max_examples=25)
@given(data=st.data())
def test_field_axioms(k, data):
    a, b, c = (data.draw(elements(k)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a != 0:
        assert a * a.inverse() == 1


@pytest.mark.parametrize("k", FIELDS, ids=lambda k: k.name)
@settings(max_examples=25)
@given(data=st.data())
def test_minimal_polynomial_annihilates(k, data):
    a = data.draw(elements(k))
    p = minimal_polynomial(a)
    assert k.degree % polys.degree(p) == 0
    assert sum((c * a**i for i, c in enumerate(p)), k.zero) == 0


@settings(max_examples=30)
@given(a=rationals, b=rationals)
def test_minimal_polynomial_matches_sympy(a, b):
    ours = minimal_polynomial(Q2.element([a, b]))
    x = sympy.Symbol("x")
    ref = sympy.Poly(sympy.minimal_polynomial(sympy.Rational(a.numerator, a.denominator)
                                              + sympy.Rational(b.numerator, b.denominator) * sympy.sqrt(2), x), x)
    ref = ref.monic()
    assert [Fraction(int(c.p), int(c.q)) for c in reversed(ref.all_coeffs())] == list(ours)


@pytest.mark.parametrize("k", [Q2, golden_field(), eta_field()], ids=lambda k: k.name)
@settings(max_examples=100)
@given(data=st.data())
def test_sqrt_of_square_is_abs(k, data):
    t = data.draw(elements(k))
    assert sqrt_in_field(t * t) == abs(t)


@settings(max_examples=50)
@given(a=rationals, b=rationals)
def test_sign_agrees_with_float(a, b):
    x = Q2.element([a, b])
    value = float(a) + float(b) * 2**0.5
    if abs(value) > 1e-9:
        assert x.sign() == (1 if value > 0 else -1)
    assert (x == 0) == (a == 0 and b == 0)


def test_algebraic_integer():
    assert is_algebraic_integer(1 + SQ2)
    assert not is_algebraic_integer(SQ2 / 2)
    tau = golden_field().gen
    assert is_algebraic_integer(tau)


def test_json_round_trip():
    k = eta_field()
    assert field_from_json(field_to_json(k)) == k
    x = k.element([Fraction(1, 2), -3, 7])
    assert element_from_json(k, x.to_json()) == x
    assert field_from_json(field_to_json(QQ)).degree == 1
