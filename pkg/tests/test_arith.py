from __future__ import annotations

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mzv.arith import (
    GaussianRational,
    bernoulli_number,
    bernoulli_numbers,
    bernoulli_polynomial,
    binomial_integer,
    binomial_scalar,
    check_finite,
    exact_pow,
    format_scalar,
    modified_bernoulli_number,
    parse_scalar,
    poly_eval,
    rational_from_str,
    rational_to_str,
    scalar_from_json,
    scalar_to_json,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)
gaussians = st.builds(GaussianRational, rationals, rationals)


@pytest.mark.parametrize("k,expected", [(0, F(1)), (1, F(-1, 2)), (2, F(1, 6)), (3, F(0)), (4, F(-1, 30)), (6, F(1, 42)), (12, F(-691, 2730))])
def test_bernoulli_values(k, expected):
    assert bernoulli_number(k) == expected


def test_bernoulli_recurrence_up_to_64():
    B = bernoulli_numbers(64)
    assert B[0] == 1
    for k in range(1, 64):
        assert sum(math.comb(k + 1, j) * B[j] for j in range(k + 1)) == 0
    assert all(B[k] == 0 for k in range(3, 65, 2))


def test_bernoulli_against_generating_function():
    # x/(e^x - 1) = sum B_k x^k / k!, compared numerically at a small x
    x = 0.3
    series = sum(float(bernoulli_number(k)) * x**k / math.factorial(k) for k in range(30))
    assert series == pytest.approx(x / math.expm1(x), rel=1e-15)


def test_modified_bernoulli():
    assert modified_bernoulli_number(1) == F(1, 2)
    assert modified_bernoulli_number(2) == F(1, 6)
    assert modified_bernoulli_number(0) == 1


def test_bernoulli_polynomials():
    assert bernoulli_polynomial(0) == (F(1),)
    assert bernoulli_polynomial(1) == (F(-1, 2), F(1))
    assert bernoulli_polynomial(2) == (F(1, 6), F(-1), F(1))
    for k in range(12):
        assert poly_eval(bernoulli_polynomial(k), F(0)) == bernoulli_number(k)


@given(st.integers(min_value=1, max_value=16), rationals)
def test_bernoulli_difference_identity(k, x):
    # B_k(x + 1) - B_k(x) = k x^(k-1)
    p = bernoulli_polynomial(k)
    assert poly_eval(p, x + 1) - poly_eval(p, x) == k * x ** (k - 1)


@pytest.mark.parametrize("n,k,expected", [(0, 0, 1), (1, 2, 0), (-2, 2, 3), (5, 2, 10), (-1, 3, -1)])
def test_binomial_integer(n, k, expected):
    assert binomial_integer(n, k) == expected


def test_binomial_scalar():
    assert binomial_scalar(F(1, 2), 2) == F(-1, 8)
    assert binomial_scalar(GaussianRational(0, 1), 0) == 1
    assert binomial_scalar(GaussianRational(0, 1), 1) == GaussianRational(0, 1)
    assert binomial_scalar(2.5 + 1j, 2) == pytest.approx((2.5 + 1j) * (1.5 + 1j) / 2)


def test_gaussian_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1, 1) / GaussianRational(0, 0)


@settings(max_examples=200)
@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if b != 0:
        assert (a / b) * b == a


def test_gaussian_mixed_types():
    i = GaussianRational(0, 1)
    assert i * i == -1
    assert i + F(1, 2) == GaussianRational(F(1, 2), 1)
    assert complex(i * 2) == 2j
    assert hash(GaussianRational(F(3, 4), 0)) == hash(F(3, 4))
    assert exact_pow(i, 4) == 1
    assert exact_pow(F(0), 0) == 1


def test_check_finite():
    assert check_finite(1 + 2j) == 1 + 2j
    with pytest.raises(ArithmeticError):
        check_finite(complex(float("nan"), 0))


@pytest.mark.parametrize(
    "text,expected",
    [
        ("3/4", F(3, 4)),
        ("-2", F(-2)),
        ("i", GaussianRational(0, 1)),
        ("-i", GaussianRational(0, -1)),
        ("1/2-3/2i", GaussianRational(F(1, 2), F(-3, 2))),
        ("2+i", GaussianRational(2, 1)),
        ("0.5", 0.5 + 0j),
        ("1e-3+2i", 0.001 + 2j),
    ],
)
def test_parse_scalar(text, expected):
    assert parse_scalar(text) == expected


@pytest.mark.parametrize("text", ["", "1/0", "abc", "1//2", "3/4x"])
def test_parse_scalar_rejects(text):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_scalar(text)


@given(rationals)
def test_rational_round_trip(q):
    assert rational_from_str(rational_to_str(q)) == q


@given(gaussians)
def test_json_round_trip_exact(z):
    back = scalar_from_json(scalar_to_json(z))
    assert back == z


@given(st.complex_numbers(allow_nan=False, allow_infinity=False, max_magnitude=1e100))
def test_json_round_trip_float(z):
    back = scalar_from_json(scalar_to_json(z))
    assert complex(back) == z


def test_format_scalar():
    assert format_scalar(F(-1, 12)) == "-1/12"
    assert format_scalar(GaussianRational(1, -1)) == "1-1i"
    assert format_scalar(GaussianRational(0, F(3, 2))) == "3/2i"
    assert format_scalar(0.1) == "0.10000000000000001"
