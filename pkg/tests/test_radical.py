import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from sombor_audit.radical import (
    RadicalNumber,
    is_square_free,
    rad_add,
    rad_mul,
    rad_to_float,
    render,
    sqrt_rational,
    square_free_split,
)
from oracle import to_sympy

S = RadicalNumber.sqrt
R = RadicalNumber.rational


def test_add_cancels_like_terms():
    a = RadicalNumber({2: 2, 5: 1})
    b = RadicalNumber({2: 1, 5: -1})
    assert rad_add(a, b) == RadicalNumber({2: 3})


def test_add_zero_is_identity():
    x = RadicalNumber({1: Fraction(1, 3), 13: -4})
    assert rad_add(x, RadicalNumber()) == x


def test_like_term_merge():
    a = RadicalNumber({13: 6, 2: -30})
    assert rad_add(a, RadicalNumber({2: 4})) == RadicalNumber({13: 6, 2: -26})


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (S(2), S(10), RadicalNumber({5: 2})),
        (R(3), RadicalNumber({2: 2}), RadicalNumber({2: 6})),
        (S(2), S(13), S(26)),
    ],
)
def test_mul_examples(a, b, expected):
    assert rad_mul(a, b) == expected


def test_constructor_reduces_radicands():
    assert RadicalNumber({8: 1}) == RadicalNumber({2: 2})
    assert RadicalNumber({4: 3}).is_rational()
    assert RadicalNumber({2: 0}).is_zero()


def test_to_float_examples():
    assert rad_to_float(RadicalNumber({2: 3})) == pytest.approx(4.242640687119285, rel=1e-15)
    x = RadicalNumber({2: 9, 10: 2, 13: 2})
    assert rad_to_float(x) == pytest.approx(float(sp.N(9 * sp.sqrt(2) + 2 * sp.sqrt(10) + 2 * sp.sqrt(13), 30)), rel=1e-14)
    assert round(rad_to_float(x), 4) == 26.2636
    assert rad_to_float(RadicalNumber()) == 0.0


def test_render():
    assert render(RadicalNumber({1: 4, 2: 15, 5: -10})) == "4 + 15*sqrt(2) - 10*sqrt(5)"
    assert render(RadicalNumber({3: Fraction(-1, 2)})) == "-1/2*sqrt(3)"
    assert render(RadicalNumber()) == "0"
    assert str(S(7)) == "sqrt(7)"


def test_sqrt_rational():
    assert sqrt_rational(8) == RadicalNumber({2: 2})
    assert sqrt_rational(Fraction(1, 2)) == RadicalNumber({2: Fraction(1, 2)})
    assert sqrt_rational(Fraction(9, 4)) == R(Fraction(3, 2))
    with pytest.raises(ValueError):
        sqrt_rational(-1)


def test_division_and_powers():
    assert S(2) / S(2) == R(1)
    assert (R(1) / S(2)) == RadicalNumber({2: Fraction(1, 2)})
    assert S(3) ** 2 == R(3)
    assert S(2) ** -2 == R(Fraction(1, 2))
    with pytest.raises(ZeroDivisionError):
        S(2) / RadicalNumber()


def test_square_free_split():
    assert square_free_split(72) == (6, 2)
    assert square_free_split(1) == (1, 1)
    assert is_square_free(30) and not is_square_free(12)


def test_hash_and_equality_with_rationals():
    assert hash(RadicalNumber({8: 1})) == hash(RadicalNumber({2: 2}))
    assert R(3) == 3
    assert R(Fraction(1, 2)) == Fraction(1, 2)


# property suite ----------------------------------------------------------

coeffs = st.fractions(min_value=-50, max_value=50, max_denominator=12)
term_maps = st.dictionaries(st.integers(min_value=1, max_value=200), coeffs, max_size=5)
radicals = term_maps.map(RadicalNumber)


def _canonical(x: RadicalNumber) -> bool:
    return all(c != 0 and is_square_free(k) for k, c in x.items())


@given(radicals, radicals)
def test_outputs_are_canonical(a, b):
    assert _canonical(a + b)
    assert _canonical(a * b)
    assert _canonical(a - b)


@given(term_maps)
def test_constructor_agrees_with_sympy(terms):
    x = RadicalNumber(terms)
    expected = sum((sp.Rational(c.numerator, c.denominator) * sp.sqrt(k) for k, c in terms.items()), sp.Integer(0))
    assert sp.simplify(to_sympy(x) - expected) == 0


@given(radicals, radicals, radicals)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(radicals, radicals)
def test_float_additivity(a, b):
    lhs = rad_to_float(rad_add(a, b))
    rhs = rad_to_float(a) + rad_to_float(b)
    scale = max(1.0, sum(abs(float(c)) * math.sqrt(k) for k, c in (a - b).items()),
                sum(abs(float(c)) * math.sqrt(k) for x in (a, b) for k, c in x.items()))
    assert abs(lhs - rhs) <= 1e-12 * scale


@given(st.integers(min_value=1, max_value=10**6))
def test_sqrt_squares_back(n):
    assert S(n) * S(n) == R(n)
