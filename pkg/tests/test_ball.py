"""Ball arithmetic encloses the exact result of every operation."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from signcert import ball as B
from signcert.ball import Ball
from signcert.errors import ModeError, PrecisionError

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)


def _encloses(b, exact):
    lo = Fraction(*b.lo.as_integer_ratio())
    hi = Fraction(*b.hi.as_integer_ratio())
    return lo <= exact <= hi


@given(rationals, rationals)
def test_field_operations_enclose(a, b):
    x, y = Ball.exact(a, 64), Ball.exact(b, 64)
    assert _encloses(x + y, a + b)
    assert _encloses(x - y, a - b)
    assert _encloses(x * y, a * b)
    if b:
        assert _encloses(x / y, a / b)


def test_exact_values_have_zero_radius():
    assert Ball.exact(3).is_exact()
    assert Ball.exact(Fraction(1, 4)).is_exact()
    assert not Ball.exact(Fraction(1, 3)).is_exact()


def test_sign_and_division_guards():
    z = Ball.exact(Fraction(1, 3), 64) - Fraction(1, 3)
    with pytest.raises(PrecisionError):
        z.sign()
    with pytest.raises(PrecisionError):
        Ball.exact(1) / z
    assert Ball.exact(-2).sign() == -1


def test_python_floats_rejected():
    with pytest.raises(ModeError):
        Ball.exact(1) + 0.5


def test_elementary_functions_enclose_known_values():
    pi = B.pi(256)
    assert _encloses(B.sin(pi / 2), 1)
    assert _encloses(B.cos(pi), -1)
    assert (B.acos(Ball.exact(0)) * 2 - pi).contains_zero()
    s = B.sqrt(Ball.exact(2))
    assert _encloses(s * s, 2)
    assert abs(float(pi.mid) - math.pi) < 1e-15


@given(rationals)
def test_text_round_trip_encloses(a):
    x = Ball.exact(a, 128)
    y = B.parse_ball(B.to_text(x), 128)
    assert _encloses(y, a)


def test_text_form():
    assert B.to_text(Ball.exact(0)) == "0+/-0"
    assert B.to_text(Ball.exact(Fraction(1, 2), 64)).endswith("+/-0")
