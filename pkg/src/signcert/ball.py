"""Midpoint-radius floats ("balls") on top of MPFR.

A :class:`Ball` stands for every real number within ``rad`` of ``mid``.
Midpoints are rounded to nearest at the ball's working precision; radii are
kept at 64 bits and always rounded upward, so a ball produced by any
operation here encloses the exact result of that operation applied to any
members of the input balls.  Signs are only reported when the ball excludes
zero; otherwise :class:`~signcert.errors.PrecisionError` is raised.
"""

from __future__ import annotations

import math
import re
import threading
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpz

from .errors import DomainError, ModeError, PrecisionError

DEFAULT_PRECISION = 256
_RAD_BITS = 64

_local = threading.local()


def _contexts(prec):
    # contexts carry sticky flags, so each thread gets its own
    cache = getattr(_local, "cache", None)
    if cache is None:
        cache = _local.cache = {}
    ctxs = cache.get(prec)
    if ctxs is None:
        ctxs = cache[prec] = (
            gmpy2.context(precision=prec),
            gmpy2.context(precision=prec, round=gmpy2.RoundUp),
            gmpy2.context(precision=prec, round=gmpy2.RoundDown),
        )
    return ctxs


def _radctx():
    _, up, down = _contexts(_RAD_BITS)
    return up, down


_ZERO = mpfr(0)


class Ball:
    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid, rad=_ZERO, prec=DEFAULT_PRECISION):
        self.mid = mid if isinstance(mid, type(_ZERO)) else _contexts(prec)[0].plus(mpfr(mid, prec))
        self.rad = rad if isinstance(rad, type(_ZERO)) else _radctx()[0].plus(rad)
        self.prec = int(prec)

    # -- construction -----------------------------------------------------

    @classmethod
    def exact(cls, value, prec=DEFAULT_PRECISION):
        """Round ``value`` (int, Fraction, mpfr, decimal string) into a ball."""
        near = _contexts(prec)[0]
        near.clear_flags()
        if isinstance(value, Ball):
            return value.with_precision(max(prec, value.prec))
        if isinstance(value, bool):
            raise ModeError("booleans are not scalars")
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, int):
            m = near.div(mpz(value), mpz(1))
        elif isinstance(value, Fraction):
            m = near.div(mpz(value.numerator), mpz(value.denominator))
        elif isinstance(value, type(_ZERO)):
            m = near.plus(value)
        else:
            raise ModeError(f"cannot promote {type(value).__name__} to a ball")
        return cls(m, _rounding_error(m, near.inexact, prec), prec)

    @classmethod
    def from_interval(cls, lo, hi, prec):
        near = _contexts(prec)[0]
        up, _ = _radctx()
        m = near.div_2exp(near.add(lo, hi), 1)
        rad = max(up.sub(hi, m), up.sub(m, lo), _ZERO)
        return cls(m, rad, prec)

    def with_precision(self, prec):
        if prec == self.prec:
            return self
        near = _contexts(prec)[0]
        near.clear_flags()
        m = near.plus(self.mid)
        up, _ = _radctx()
        return Ball(m, up.add(self.rad, _rounding_error(m, near.inexact, prec)), prec)

    # -- inspection -------------------------------------------------------

    @property
    def lo(self):
        return _contexts(self.prec)[2].sub(self.mid, self.rad)

    @property
    def hi(self):
        return _contexts(self.prec)[1].add(self.mid, self.rad)

    def is_exact(self):
        return self.rad == 0

    def contains_zero(self):
        return gmpy2.cmp_abs(self.mid, self.rad) <= 0

    def sign(self):
        if self.rad == 0 or gmpy2.cmp_abs(self.mid, self.rad) > 0:
            return int(gmpy2.sign(self.mid))
        raise PrecisionError(f"sign of {self} is undecidable at {self.prec} bits")

    def mid_fraction(self):
        return Fraction(*self.mid.as_integer_ratio())

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"Ball({float(self.mid)!r} +/- {float(self.rad):.3g}, prec={self.prec})"

    def __str__(self):
        return to_text(self)

    def __eq__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        return (self.mid, self.rad, self.prec) == (other.mid, other.rad, other.prec)

    def __hash__(self):
        return hash((self.mid, self.rad, self.prec))

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return Ball(_contexts(self.prec)[0].minus(self.mid), self.rad, self.prec)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _lift(other, self.prec)
        if other is NotImplemented:
            return other
        prec = max(self.prec, other.prec)
        near = _contexts(prec)[0]
        up, _ = _radctx()
        near.clear_flags()
        m = near.add(self.mid, other.mid)
        rad = self.rad
        if other.rad:
            rad = up.add(rad, other.rad)
        if near.inexact:
            rad = up.add(rad, _rounding_error(m, True, prec))
        return Ball(m, rad, prec)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other, self.prec)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _lift(other, self.prec)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _lift(other, self.prec)
        if other is NotImplemented:
            return other
        prec = max(self.prec, other.prec)
        near = _contexts(prec)[0]
        up, _ = _radctx()
        near.clear_flags()
        m = near.mul(self.mid, other.mid)
        inexact = near.inexact
        rad = _ZERO
        if self.rad or other.rad:
            rad = up.add(up.mul(up.abs(self.mid), other.rad), up.mul(up.abs(other.mid), self.rad))
            rad = up.add(rad, up.mul(self.rad, other.rad))
        if inexact:
            rad = up.add(rad, _rounding_error(m, True, prec))
        return Ball(m, rad, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other, self.prec)
        if other is NotImplemented:
            return other
        if other.contains_zero():
            raise PrecisionError(f"division by a ball containing zero: {other!r}")
        prec = max(self.prec, other.prec)
        near = _contexts(prec)[0]
        up, down = _radctx()
        near.clear_flags()
        m = near.div(self.mid, other.mid)
        inexact = near.inexact
        rad = _ZERO
        if self.rad or other.rad:
            num = up.add(up.mul(up.abs(self.mid), other.rad), up.mul(up.abs(other.mid), self.rad))
            b = down.abs(other.mid)
            den = down.mul(b, down.sub(b, other.rad))
            rad = up.div(num, den)
        if inexact:
            rad = up.add(rad, _rounding_error(m, True, prec))
        return Ball(m, rad, prec)

    def __rtruediv__(self, other):
        other = _lift(other, self.prec)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ModeError("balls support nonnegative integer powers only")
        result = Ball(mpfr(1), _ZERO, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result


def _rounding_error(m, inexact, prec):
    # round-to-nearest at prec bits: |exact - m| <= 2^-prec |m|
    if not inexact:
        return _ZERO
    up, _ = _radctx()
    return up.mul_2exp(up.abs(m), -prec)


def _lift(x, prec):
    if isinstance(x, Ball):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Ball.exact(x, prec)
    if isinstance(x, float):
        raise ModeError("python floats are not accepted; use Fraction or Ball")
    return NotImplemented


def to_ball(x, prec=DEFAULT_PRECISION):
    if isinstance(x, Ball):
        return x.with_precision(max(prec, x.prec))
    return Ball.exact(x, prec)


# -- elementary functions ----------------------------------------------------


def pi(prec=DEFAULT_PRECISION):
    near, up, down = _contexts(prec)
    return Ball.from_interval(down.const_pi(), up.const_pi(), prec)


def sqrt(x, prec=None):
    prec = prec or (x.prec if isinstance(x, Ball) else DEFAULT_PRECISION)
    x = to_ball(x, prec)
    near, up, down = _contexts(prec)
    hi = up.add(x.mid, x.rad)
    if hi < 0:
        raise DomainError("square root of a negative ball")
    lo = max(down.sub(x.mid, x.rad), _ZERO)
    return Ball.from_interval(down.sqrt(lo), up.sqrt(hi), prec)


def acos(x, prec=None):
    prec = prec or (x.prec if isinstance(x, Ball) else DEFAULT_PRECISION)
    x = to_ball(x, prec)
    near, up, down = _contexts(prec)
    lo = max(down.sub(x.mid, x.rad), mpfr(-1))
    hi = min(up.add(x.mid, x.rad), mpfr(1))
    if lo > 1 or hi < -1:
        raise DomainError("arccos argument outside [-1, 1]")
    # arccos is decreasing
    return Ball.from_interval(down.acos(hi), up.acos(lo), prec)


def _lipschitz1(fn_name, x, prec):
    prec = prec or (x.prec if isinstance(x, Ball) else DEFAULT_PRECISION)
    x = to_ball(x, prec)
    near = _contexts(prec)[0]
    up, _ = _radctx()
    near.clear_flags()
    m = getattr(near, fn_name)(x.mid)
    rad = up.add(x.rad, _rounding_error(m, near.inexact, prec))
    return Ball(m, rad, prec)


def sin(x, prec=None):
    return _lipschitz1("sin", x, prec)


def cos(x, prec=None):
    return _lipschitz1("cos", x, prec)


# -- generic scalar helpers ---------------------------------------------------


def sign(x):
    """Sign of an exact or ball scalar; raises PrecisionError when undecidable."""
    if isinstance(x, Ball):
        return x.sign()
    return (x > 0) - (x < 0)


def is_zero(x):
    """True only for scalars that are exactly zero."""
    if isinstance(x, Ball):
        return x.mid == 0 and x.rad == 0
    return x == 0


def magnitude(x):
    return abs(float(x.mid)) if isinstance(x, Ball) else abs(float(x))


# -- text form ---------------------------------------------------------------

_BALL_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\+/-(?:2\^(-?\d+)|0)\s*$")


def to_text(b):
    """Decimal midpoint plus a power-of-two bound covering radius and printing error."""
    digits = math.ceil(b.prec * math.log10(2)) + 2
    if b.mid == 0:
        dec = "0"
    else:
        mant, exp, _ = b.mid.digits(10, digits)
        neg = mant.startswith("-")
        mant = mant.lstrip("-")
        dec = f"{'-' if neg else ''}{mant[0]}.{mant[1:]}e{exp - 1:+03d}"
    exact_dec = Fraction(dec)
    err = abs(exact_dec - b.mid_fraction()) + Fraction(*b.rad.as_integer_ratio())
    if err == 0:
        return f"{dec}+/-0"
    k = math.ceil(math.log2(err.numerator) - math.log2(err.denominator)) + 1
    return f"{dec}+/-2^{k}"


def parse_ball(text, prec=DEFAULT_PRECISION):
    m = _BALL_RE.match(text)
    if not m:
        raise ValueError(f"not a ball literal: {text!r}")
    b = Ball.exact(Fraction(m.group(1)), prec)
    if m.group(2) is not None:
        up, _ = _radctx()
        b = Ball(b.mid, up.add(b.rad, up.mul_2exp(mpfr(1), int(m.group(2)))), prec)
    return b


def is_ball_text(text):
    return "+/-" in text
