"""Polynomial arithmetic, sign analysis and the coefficient text format."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from signcert.ball import Ball
from signcert.errors import DomainError, InputError, ModeError, PrecisionError
from signcert.oracle import brute_variations, naive_multiply
from signcert.polyarith import (
    Polynomial,
    format_polynomial,
    parse_polynomial,
    poly_gcd,
    sign_normalize,
    sign_variations,
    strip_zero_roots,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
coeff_lists = st.lists(rationals, max_size=13)


def P(*cs):
    return Polynomial(cs)


def test_parse_examples():
    assert parse_polynomial("2,-3,1") == P(2, -3, 1)
    assert parse_polynomial("1/2,0,1") == P(Fraction(1, 2), 0, 1)
    assert parse_polynomial(" 0 ").is_zero()
    assert parse_polynomial("0.25,1e1") == P(Fraction(1, 4), 10)


@pytest.mark.parametrize(
    "text, offset",
    [("2,-3,1,", 7), (",1", 0), ("1,,2", 2), ("1, x", 3), ("1,2/0", 2), ("nan", 0), ("1, inf", 3)],
)
def test_parse_errors_report_offset(text, offset):
    with pytest.raises(InputError) as info:
        parse_polynomial(text)
    assert info.value.offset == offset


def test_floats_rejected():
    with pytest.raises(ModeError):
        Polynomial([0.5, 1])
    with pytest.raises(ModeError):
        P(1, 2) * 0.5


def test_zero_polynomial():
    z = Polynomial()
    assert z.degree == -1 and format_polynomial(z) == "0"
    assert P(0, 0).is_zero()
    with pytest.raises(DomainError):
        strip_zero_roots(z)
    with pytest.raises(DomainError):
        sign_normalize(z)


@given(coeff_lists, coeff_lists)
def test_multiply_matches_schoolbook_oracle(a, b):
    assert list((Polynomial(a) * Polynomial(b)).coeffs) == naive_multiply(a, b)


@given(coeff_lists, coeff_lists, coeff_lists)
def test_ring_laws(a, b, c):
    A, B, C = Polynomial(a), Polynomial(b), Polynomial(c)
    assert A * (B + C) == A * B + A * C
    assert (A - B) + B == A
    assert A * B == B * A


@given(coeff_lists, coeff_lists.filter(lambda c: any(c)))
def test_divmod_reconstructs(a, b):
    A, B = Polynomial(a), Polynomial(b)
    q, r = A.divmod(B)
    assert q * B + r == A
    assert r.degree < B.degree


def test_gcd_and_primitive():
    a = P(2, -3, 1) * P(1, 1)
    b = P(2, -3, 1) * P(5, 1)
    assert poly_gcd(a, b) == P(2, -3, 1)
    assert P(Fraction(1, 2), Fraction(-3, 4)).primitive() == P(2, -3)


@given(st.lists(st.integers(-2, 2), max_size=64))
def test_sign_variations_matches_pair_count(cs):
    assert sign_variations(cs) == brute_variations(cs)


def test_variation_examples():
    assert sign_variations(P(2, -3, 1)) == 2
    assert sign_variations(P(5, -3, 1)) == 2
    assert sign_variations(P(1, 0, -1, 0, 1)) == 2
    assert sign_variations(P(1, 2, 3)) == 0


def test_strip_and_normalize():
    p, m = strip_zero_roots(P(0, 0, -2, 1))
    assert (p, m) == (P(-2, 1), 2)
    q, flipped = sign_normalize(P(1, -1))
    assert q == P(-1, 1) and flipped


def test_ball_coefficients_keep_exact_zeros():
    x = Ball.exact(Fraction(1, 3))
    p = Polynomial([x, 0, 1])
    sq = p * p
    assert sq.coeffs[1].is_exact() and sq.coeffs[1].mid == 0
    assert sq.precision == 256


def test_undecidable_sign_raises():
    fuzzy = Ball.exact(Fraction(1, 3), 64) - Fraction(1, 3)
    assert fuzzy.contains_zero() and not fuzzy.is_exact()
    with pytest.raises(PrecisionError):
        sign_variations(Polynomial([1, fuzzy, -1]))
    events = []
    assert sign_variations(Polynomial([1, fuzzy, -1]), zero_tolerant=True, events=events) == 1
    assert events == [1]


@given(coeff_lists)
def test_format_round_trip(cs):
    p = Polynomial(cs)
    assert parse_polynomial(format_polynomial(p)) == p
