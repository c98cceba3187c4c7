"""Dense univariate polynomials over exact rationals or MPFR balls.

Coefficients are stored in ascending order: ``coeffs[i]`` multiplies ``x**i``.
A polynomial is *exact* when every coefficient is a :class:`fractions.Fraction`
and *float* (ball) mode otherwise; mixing the two promotes to balls at the
largest precision present.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce

from . import ball as _ball
from .ball import DEFAULT_PRECISION, Ball, is_zero, sign, to_ball
from .errors import DomainError, InputError, ModeError, PrecisionError


def _coerce(c):
    if isinstance(c, bool):
        raise ModeError("booleans are not coefficients")
    if isinstance(c, (Fraction, Ball)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return parse_scalar(c)
    raise ModeError(f"unsupported coefficient type {type(c).__name__}; use int, Fraction or Ball")


class Polynomial:
    """Immutable dense polynomial; the empty coefficient tuple is the zero polynomial."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_coerce(c) for c in coeffs]
        precs = [c.prec for c in cs if isinstance(c, Ball)]
        if precs:
            prec = max(precs)
            cs = [to_ball(c, prec) for c in cs]
        while cs and is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots):
        return reduce(lambda acc, r: acc * cls([-r, 1]), roots, cls([1]))

    # -- basic properties ---------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def precision(self):
        """Working precision in bits, or ``None`` for exact polynomials."""
        for c in self.coeffs:
            if isinstance(c, Ball):
                return c.prec
        return None

    def is_exact(self):
        return self.precision is None

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial([{format_polynomial(self)}])"

    def __str__(self):
        return format_polynomial(self)

    # -- ring operations ----------------------------------------------------

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        n = max(len(self), len(other))
        return Polynomial([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(self, other)
        if isinstance(other, (int, Fraction, Ball)) and not isinstance(other, bool):
            return self.scale(other)
        if isinstance(other, float):
            raise ModeError("python floats are not accepted; use Fraction or Ball")
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ModeError("polynomial powers must be nonnegative integers")
        result = Polynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        c = _coerce(c)
        return Polynomial([c * a for a in self.coeffs])

    def shift(self, k):
        """Multiply by ``x**k``."""
        if self.is_zero():
            return self
        return Polynomial([0] * k + list(self.coeffs))

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def trailing_zeros(self):
        m = 0
        while m < len(self.coeffs) and is_zero(self.coeffs[m]):
            m += 1
        return m

    # -- exact-only algebra -------------------------------------------------

    def _require_exact(self, what):
        if not self.is_exact():
            raise ModeError(f"{what} needs exact coefficients")

    def divmod(self, other):
        self._require_exact("division")
        other._require_exact("division")
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Polynomial(quot), Polynomial(rem[: other.degree])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def primitive(self):
        """Exact polynomial rescaled to coprime integer coefficients; the sign is kept."""
        self._require_exact("primitive part")
        if self.is_zero():
            return self
        den = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        nums = [int(c * den) for c in self.coeffs]
        g = reduce(math.gcd, nums, 0)
        return Polynomial([Fraction(n, g) for n in nums])


def _as_poly(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction, Ball)) and not isinstance(x, bool):
        return Polynomial([x])
    if isinstance(x, float):
        raise ModeError("python floats are not accepted; use Fraction or Ball")
    return NotImplemented


def poly_gcd(a, b):
    """Monic gcd of two exact polynomials."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def multiply(a, b):
    """Schoolbook product.

    Exact inputs are convolved as integers over a common denominator.  Ball
    inputs accumulate through ball arithmetic, so every output coefficient
    carries a rigorous bound on its rounding error; exact-zero coefficients
    are skipped, which keeps structural zeros exactly zero.
    """
    if a.is_zero() or b.is_zero():
        return Polynomial()
    if a.is_exact() and b.is_exact():
        da = reduce(math.lcm, (c.denominator for c in a.coeffs), 1)
        db = reduce(math.lcm, (c.denominator for c in b.coeffs), 1)
        ia = [int(c * da) for c in a.coeffs]
        ib = [int(c * db) for c in b.coeffs]
        out = [0] * (len(ia) + len(ib) - 1)
        for i, x in enumerate(ia):
            if x:
                for j, y in enumerate(ib):
                    out[i + j] += x * y
        den = da * db
        return Polynomial([Fraction(v, den) for v in out])
    prec = max(p for p in (a.precision, b.precision) if p)
    ca = [to_ball(c, prec) for c in a.coeffs]
    cb = [to_ball(c, prec) for c in b.coeffs]
    out = [None] * (len(ca) + len(cb) - 1)
    for i, x in enumerate(ca):
        if is_zero(x):
            continue
        for j, y in enumerate(cb):
            if is_zero(y):
                continue
            t = x * y
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    zero = Ball.exact(0, prec)
    return Polynomial([zero if c is None else c for c in out])


def product(polys):
    return reduce(multiply, polys, Polynomial([1]))


# -- sign analysis -------------------------------------------------------------


def sign_sequence(p, zero_tolerant=False, events=None):
    """Signs of the coefficient sequence.

    With ``zero_tolerant`` a ball coefficient whose magnitude is within its
    error bound is read as zero and its degree is appended to ``events``;
    otherwise such a coefficient raises :class:`PrecisionError`.
    """
    coeffs = p.coeffs if isinstance(p, Polynomial) else p
    out = []
    for k, c in enumerate(coeffs):
        try:
            out.append(sign(c))
        except PrecisionError:
            if not zero_tolerant:
                raise PrecisionError(
                    f"sign of coefficient at degree {k} is below its error bound"
                ) from None
            if events is not None:
                events.append(k)
            out.append(0)
    return tuple(out)


def sign_variations(p, zero_tolerant=False, events=None):
    """Number of sign changes in the coefficient sequence, zeros ignored."""
    count = 0
    last = 0
    for s in sign_sequence(p, zero_tolerant, events):
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def strip_zero_roots(p):
    """Return ``(p / x**m, m)`` with ``m`` the largest power of ``x`` dividing ``p``."""
    if p.is_zero():
        raise DomainError("the zero polynomial has no well-defined root structure")
    m = p.trailing_zeros()
    if isinstance(p.coeffs[m], Ball) and p.coeffs[m].contains_zero():
        raise PrecisionError("cannot decide whether the constant term vanishes")
    return Polynomial(p.coeffs[m:]), m


def sign_normalize(p):
    """Return ``(±p, flipped)`` with a positive leading coefficient."""
    if p.is_zero():
        raise DomainError("the zero polynomial has no leading coefficient")
    if sign(p.leading) < 0:
        return -p, True
    return p, False


# -- text format ---------------------------------------------------------------

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_DECIMAL_RE = re.compile(r"^[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?$")


def parse_scalar(text, precision=DEFAULT_PRECISION):
    t = text.strip()
    if _RATIONAL_RE.match(t):
        num, _, den = t.partition("/")
        if den and int(den) == 0:
            raise InputError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den) if den else 1)
    if _DECIMAL_RE.match(t):
        return Fraction(t)
    if _ball.is_ball_text(t):
        try:
            return _ball.parse_ball(t, precision)
        except ValueError:
            pass
    raise InputError(f"malformed scalar {text!r}")


def format_scalar(c):
    if isinstance(c, Ball):
        return _ball.to_text(c)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_polynomial(text, precision=DEFAULT_PRECISION):
    """Parse ascending comma-separated coefficients, e.g. ``"2,-3,1"`` for x^2 - 3x + 2."""
    coeffs = []
    offset = 0
    for token in text.split(","):
        stripped = token.strip()
        start = offset + (len(token) - len(token.lstrip()))
        if not stripped:
            raise InputError("empty coefficient", start)
        try:
            coeffs.append(parse_scalar(stripped, precision))
        except InputError as exc:
            raise InputError(str(exc), start) from None
        offset += len(token) + 1
    return Polynomial(coeffs)


def format_polynomial(p):
    if p.is_zero():
        return "0"
    return ",".join(format_scalar(c) for c in p.coeffs)
