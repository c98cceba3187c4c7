"""Root specifications, the four-way root partition, and numeric root finding.

A complex root is stored once, with ``im_sq > 0``, and stands for the
conjugate pair.  Storing the squared imaginary part keeps roots such as
3/2 + i*sqrt(11)/2 exact: everything downstream only needs the real part
and ``|root|**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import mpmath

from .ball import DEFAULT_PRECISION, Ball, is_zero, sign, to_ball
from .errors import ClassificationError, ConsistencyError, ConvergenceError, DomainError
from .polyarith import Polynomial, poly_gcd, product


def _scalar(x):
    if isinstance(x, (Fraction, Ball)):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"unsupported root coordinate {x!r}")


def _exact_sqrt(q):
    """Square root of a nonnegative Fraction if it is rational, else None."""
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class Root:
    """A real root (``im_sq == 0``) or a conjugate pair ``re ± i*sqrt(im_sq)``."""

    re: Fraction | Ball
    im_sq: Fraction | Ball = Fraction(0)
    mult: int = 1

    def __post_init__(self):
        object.__setattr__(self, "re", _scalar(self.re))
        object.__setattr__(self, "im_sq", _scalar(self.im_sq))
        if not isinstance(self.mult, int) or self.mult < 1:
            raise DomainError(f"multiplicity must be a positive integer, got {self.mult!r}")
        if isinstance(self.im_sq, Fraction) and self.im_sq < 0:
            raise DomainError("squared imaginary part must be nonnegative")

    @classmethod
    def complex(cls, re, im, mult=1):
        im = _scalar(im)
        if sign(im) <= 0:
            raise DomainError("store complex roots with a positive imaginary part")
        return cls(re, im * im, mult)

    @property
    def is_real(self):
        return is_zero(self.im_sq)

    @property
    def is_exact(self):
        return isinstance(self.re, Fraction) and isinstance(self.im_sq, Fraction)

    @property
    def beta_sq(self):
        return self.re * self.re + self.im_sq

    @property
    def im(self):
        if isinstance(self.im_sq, Fraction):
            r = _exact_sqrt(self.im_sq)
            if r is not None:
                return r
        from .ball import sqrt

        return sqrt(self.im_sq)

    @property
    def degree(self):
        return self.mult * (1 if self.is_real else 2)

    def sort_key(self):
        return (float(self.re), float(self.im_sq), self.mult)


@dataclass(frozen=True)
class RootSpec:
    roots: tuple = ()
    declared_degree: int | None = None
    approximate: bool = False
    notes: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(self.roots))
        total = sum(r.degree for r in self.roots)
        if self.declared_degree is None:
            object.__setattr__(self, "declared_degree", total)
        elif self.declared_degree != total:
            raise DomainError(
                f"declared degree {self.declared_degree} != root count {total} "
                "(complex pairs count twice)"
            )

    @property
    def is_exact(self):
        return all(r.is_exact for r in self.roots)


@dataclass(frozen=True)
class RootPartition:
    """Roots split by class: nonpositive reals, complex with re <= 0,
    complex with re > 0, positive reals."""

    lambda1: tuple = ()
    lambda2: tuple = ()
    lambda3: tuple = ()
    lambda4: tuple = ()

    @property
    def roots(self):
        return self.lambda1 + self.lambda2 + self.lambda3 + self.lambda4

    @property
    def is_exact(self):
        return all(r.is_exact for r in self.roots)

    @property
    def degree(self):
        return sum(r.degree for r in self.roots)


class Factors(NamedTuple):
    F1: Polynomial
    F2: Polynomial
    F3: Polynomial
    F4: Polynomial
    F: Polynomial


def _classify_sign(x, what):
    try:
        return sign(x)
    except Exception:
        raise ClassificationError(f"{what} is within its error bound of zero; cannot classify") from None


def partition_roots(spec):
    classes = ([], [], [], [])
    for r in spec.roots:
        if r.is_real:
            s = _classify_sign(r.re, "real root")
            if s == 0:
                raise DomainError("root at the origin; remove it with strip_zero_roots first")
            classes[0 if s < 0 else 3].append(r)
        else:
            if _classify_sign(r.im_sq, "imaginary part") <= 0:
                raise DomainError("complex root with nonpositive squared imaginary part")
            s = _classify_sign(r.re, "real part of a complex root")
            classes[1 if s <= 0 else 2].append(r)
    return RootPartition(*(tuple(sorted(c, key=Root.sort_key)) for c in classes))


def linear_factor(root):
    return Polynomial([-root.re, 1])


def quadratic(root):
    """x^2 - 2*re*x + (re^2 + im^2) for a conjugate pair."""
    return Polynomial([root.beta_sq, -2 * root.re, 1])


def expand_from_partition(part):
    F1 = product(linear_factor(r) ** r.mult for r in part.lambda1)
    F2 = product(quadratic(r) ** r.mult for r in part.lambda2)
    F3 = product(quadratic(r) ** r.mult for r in part.lambda3)
    F4 = product(linear_factor(r) ** r.mult for r in part.lambda4)
    return Factors(F1, F2, F3, F4, product([F1, F2, F3, F4]))


def count_positive_roots(part):
    return sum(r.mult for r in part.lambda4)


# -- numeric root finding ------------------------------------------------------


def squarefree_decomposition(f):
    """Yun's algorithm: exact ``f`` -> [(s_k, k)] with f ~ prod s_k**k, s_k squarefree."""
    f = f.monic()
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f // a
    c = df // a
    d = c - b.derivative()
    out = []
    k = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b // a
        c = d // a
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, k))
        k += 1
    return out


def _to_mpf(ctx, x):
    q = x.mid_fraction() if isinstance(x, Ball) else Fraction(x)
    return ctx.mpf(q.numerator) / q.denominator


def _mpf_fraction(v):
    sgn, man, exp, _ = v._mpf_
    q = Fraction(man) * Fraction(2) ** exp
    return -q if sgn else q


def aberth(p, precision=DEFAULT_PRECISION, max_iter=500):
    """Aberth-Ehrlich simultaneous iteration.

    Returns ``(roots, radii)`` where each radius is the Weierstrass inclusion
    bound ``n |p(z_i)| / |lc * prod_{j != i} (z_i - z_j)|``.
    """
    n = p.degree
    ctx = mpmath.MPContext()
    ctx.prec = precision + 32
    a = [_to_mpf(ctx, c) for c in p.coeffs]
    lead = a[-1]
    a = [c / lead for c in a]
    if n == 1:
        return [ctx.mpc(-a[0])], [ctx.mpf(0)]

    # Fujiwara bound for the starting circle
    bound = 2 * max(abs(a[n - k]) ** (ctx.mpf(1) / k) for k in range(1, n + 1))
    radius = bound / 2
    z = [radius * ctx.expj(2 * ctx.pi * k / n + ctx.mpf("0.4")) for k in range(n)]
    tol = ctx.ldexp(1, -(precision + 8))

    def horner(x):
        v = ctx.mpc(1)
        dv = ctx.mpc(0)
        for c in reversed(a[:-1]):
            dv = dv * x + v
            v = v * x + c
        return v, dv

    settled = 0
    for _ in range(max_iter):
        biggest = ctx.mpf(0)
        for i in range(n):
            v, dv = horner(z[i])
            if v == 0:
                continue
            ratio = v / dv if dv != 0 else ctx.mpc(tol)
            s = ctx.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i)
            w = ratio / (1 - ratio * s)
            z[i] -= w
            rel = abs(w) / max(abs(z[i]), 1)
            if rel > biggest:
                biggest = rel
        if biggest < tol:
            settled += 1
            if settled >= 2:
                break
    else:
        raise ConvergenceError(f"Aberth iteration did not converge within {max_iter} steps")

    radii = []
    for i in range(n):
        v, _ = horner(z[i])
        den = ctx.fprod(z[i] - z[j] for j in range(n) if j != i)
        radii.append(n * abs(v) / abs(den))
    return z, radii


def _exact_multiplicity(p, factor):
    k = 0
    while True:
        q, r = p.divmod(factor)
        if not r.is_zero():
            return k
        p = q
        k += 1


def find_roots(p, precision=DEFAULT_PRECISION, cluster_radius=None):
    """Approximate every root of ``p`` and return them as a RootSpec.

    Exact inputs are first split into squarefree parts, so multiplicities are
    exact.  Roots closer than ``cluster_radius`` are merged (summing
    multiplicity) and roots with ``|im| < cluster_radius`` are read as real.
    For exact inputs each root is then offered a rational candidate (a linear
    factor, or a rational quadratic for pairs); candidates that divide ``p``
    to the right power are kept exactly, the rest are returned as balls and
    the spec is flagged approximate.
    """
    if p.is_zero() or p.degree < 1:
        raise DomainError("root finding needs a polynomial of degree at least 1")
    if is_zero(p.coeffs[0]):
        raise DomainError("polynomial has a root at the origin; strip zero roots first")
    if cluster_radius is None:
        cluster_radius = Fraction(1, 2 ** (precision // 4))
    rad = float(cluster_radius)

    parts = squarefree_decomposition(p) if p.is_exact() else [(p, 1)]
    pts = []
    for part, k in parts:
        zs, radii = aberth(part, precision)
        pts.extend((complex(z), z, float(r), k) for z, r in zip(zs, radii))

    clusters = _cluster(pts, rad)
    reals, upper, lower = [], [], []
    for members in clusters:
        mult = sum(m[3] for m in members)
        ctx_z = [m[1] for m in members]
        centre = sum(ctx_z) / len(ctx_z)
        spread = max(abs(complex(z) - complex(centre)) for z in ctx_z)
        inc = max(m[2] for m in members) + spread
        entry = (centre, mult, inc)
        im = float(centre.imag)
        if abs(im) < rad:
            reals.append(entry)
        elif im > 0:
            upper.append(entry)
        else:
            lower.append(entry)

    pairs = []
    for c, mult, inc in upper:
        best = None
        for j, (d, m2, inc2) in enumerate(lower):
            dist = abs(complex(c).conjugate() - complex(d))
            if best is None or dist < best[0]:
                best = (dist, j)
        if best is None or best[0] > 2 * rad + 1e-300:
            raise ClassificationError(f"complex root {complex(c)} has no conjugate partner")
        d, m2, inc2 = lower.pop(best[1])
        if m2 != mult:
            raise ClassificationError("conjugate clusters disagree on multiplicity")
        pairs.append((c, mult, max(inc, inc2)))
    if lower:
        raise ClassificationError("unpaired complex root below the real axis")

    roots, notes = [], []
    approximate = False
    for c, mult, inc in reals:
        r = _recognize_real(p, c, mult, precision) if p.is_exact() else None
        if r is None:
            approximate = True
            re = _ball_from(c.real, inc, precision)
            if re.contains_zero():
                raise ClassificationError("real root within its error bound of the origin")
            r = Root(re, Fraction(0), mult)
        roots.append(r)
    for c, mult, inc in pairs:
        r = _recognize_pair(p, c, mult, precision) if p.is_exact() else None
        if r is None:
            approximate = True
            re = _ball_from(c.real, inc, precision)
            if re.contains_zero():
                raise ClassificationError("complex pair straddles the imaginary axis")
            im = _ball_from(c.imag, inc, precision)
            r = Root(re, im * im, mult)
        roots.append(r)

    roots.sort(key=Root.sort_key)
    if sum(r.degree for r in roots) != p.degree:
        raise ConsistencyError("recovered multiplicities do not add up to the degree")
    if approximate:
        notes.append("some roots are numeric approximations (balls)")
    else:
        notes.append("all roots recognised exactly and confirmed by exact division")
    return RootSpec(tuple(roots), p.degree, approximate, tuple(notes))


def _cluster(pts, rad):
    parent = list(range(len(pts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if abs(pts[i][0] - pts[j][0]) < rad:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(len(pts)):
        groups.setdefault(find(i), []).append(pts[i])
    return [groups[k] for k in sorted(groups)]


def _ball_from(v, inc, precision):
    b = to_ball(_mpf_fraction(v), precision)
    # inclusion radii come from working-precision arithmetic; pad by 2x
    return b + Ball(0, 2 * inc, precision) if inc else b


def _rationalize(v, precision):
    return _mpf_fraction(v).limit_denominator(2 ** (precision // 4))


def _recognize_real(p, c, mult, precision):
    r = _rationalize(c.real, precision)
    if r == 0:
        return None
    if _exact_multiplicity(p, Polynomial([-r, 1])) != mult:
        return None
    return Root(r, Fraction(0), mult)


def _recognize_pair(p, c, mult, precision):
    s = _rationalize(2 * c.real, precision)
    t = _rationalize(c.real * c.real + c.imag * c.imag, precision)
    im_sq = t - s * s / 4
    if im_sq <= 0:
        return None
    if _exact_multiplicity(p, Polynomial([t, -s, 1])) != mult:
        return None
    return Root(s / 2, im_sq, mult)
