"""Multiplier polynomials and the two certificate constructions.

For a pair ``a ± ib`` with ``a > 0`` let ``beta^2 = a^2 + b^2`` and
``cos(phi) = a / beta``.  The scaled sines

    D_k = beta^k * sin((k+1) phi) / sin(phi)

obey ``D_0 = 1``, ``D_1 = 2a``, ``D_{k+1} = 2a D_k - beta^2 D_{k-1}``, so they
are rational whenever ``a`` and ``beta^2`` are.  ``n`` is the first index with
``D_n <= 0`` and the multiplier used here is

    g(x) = sum_{k<n} D_k * beta^(2(n-1-k)) * x^k,

a positive rescaling of the sine-form multiplier by ``beta^(n-1) / sin(phi)``.
Then ``(x^2 - 2a x + beta^2) g(x) = beta^(2n) - D_n x^n + D_{n-1} x^(n+1)``.
Rational root data therefore gives fully exact certificates.  Ball root data
evaluates ``D_k`` from ``phi`` directly, because ball radii compound through
the recurrence by a factor of about 1 + sqrt(2) per step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import ball as B
from .ball import DEFAULT_PRECISION, Ball, is_zero, sign
from .errors import (
    ConsistencyError,
    DomainError,
    NotPositiveError,
    PrecisionError,
)
from .polyarith import (
    Polynomial,
    product,
    sign_normalize,
    sign_variations,
    strip_zero_roots,
)
from .rootkit import (
    Root,
    RootSpec,
    count_positive_roots,
    expand_from_partition,
    find_roots,
    partition_roots,
    quadratic,
)


@dataclass(frozen=True)
class TrigAngle:
    alpha: Fraction | Ball
    beta_sq: Fraction | Ball
    phi: Ball
    n: int
    boundary: bool
    scaled_sines: tuple = field(repr=False)

    @property
    def beta(self):
        if isinstance(self.beta_sq, Fraction):
            n, d = self.beta_sq.numerator, self.beta_sq.denominator
            rn, rd = math.isqrt(n), math.isqrt(d)
            if rn * rn == n and rd * rd == d:
                return Fraction(rn, rd)
        return B.sqrt(self.beta_sq, self.phi.prec)


@dataclass(frozen=True)
class TrigMultiplier:
    root: Root
    angle: TrigAngle
    g: Polynomial
    product_form: tuple
    scale: Ball
    assumptions: tuple = ()

    def product_polynomial(self):
        c0, cn, cn1 = self.product_form
        n = self.angle.n
        zero = Fraction(0)
        return Polynomial([c0] + [zero] * (n - 1) + [cn, cn1])


@dataclass(frozen=True)
class GeometricMultiplier:
    alpha: Fraction | Ball
    q: int
    h: Polynomial


@dataclass(frozen=True)
class Certificate:
    kind: str
    F: Polynomial
    G: Polynomial
    H: Polynomial
    K: Polynomial
    L: Polynomial
    M: Polynomial
    FK: Polynomial
    p: int
    q: int
    V_FK: int
    nu_FK: int
    mode: str
    precision_bits: int
    trig: tuple = ()
    geometric: tuple = ()
    assumptions: tuple = ()
    zero_root_multiplicity: int = 0
    flipped: bool = False
    notes: tuple = ()

    @property
    def lambda4(self):
        return tuple((g.alpha, m) for g, m in self.geometric)


# -- single-root pieces ---------------------------------------------------------


def quadratic_factor(root):
    if root.is_real:
        raise DomainError("quadratic factors are defined for complex pairs only")
    return quadratic(root)


def _integer_in(lo, hi):
    """Integers N with lo <= N <= hi for mpfr bounds."""
    first = math.ceil(Fraction(*lo.as_integer_ratio()))
    last = math.floor(Fraction(*hi.as_integer_ratio()))
    return list(range(first, last + 1)) if first <= last else []


def trig_angle(root, precision=DEFAULT_PRECISION):
    """Angle data for a pair with positive real part.

    ``n`` is decided twice: from the ball value of ``pi / phi`` and from the
    signs of the scaled sines.  The two must agree.  A scaled sine that is
    exactly zero marks the boundary ``(n+1) phi = pi``; in ball mode a scaled
    sine within its error bound of zero is accepted as that boundary only if
    the angle route also sees an integer inside ``pi / phi``.
    """
    if root.is_real:
        raise DomainError("trig_angle needs a complex pair")
    alpha, beta_sq = root.re, root.beta_sq
    if sign(alpha) <= 0:
        raise DomainError("trig_angle needs a pair with positive real part")

    phi = B.acos(B.to_ball(alpha, precision) / B.sqrt(beta_sq, precision), precision)
    ratio = B.pi(precision) / phi
    candidates = _integer_in(ratio.lo, ratio.hi)
    if len(candidates) > 1:
        raise PrecisionError("pi/phi is too uncertain to fix n; raise the precision")
    angle_n = None if candidates else math.ceil(ratio.mid_fraction()) - 1

    exact = isinstance(alpha, Fraction) and isinstance(beta_sq, Fraction)
    if exact:
        D = [Fraction(1), 2 * alpha]
    else:
        # ball radii compound through the recurrence, so evaluate directly
        beta = B.sqrt(beta_sq, precision)
        sin_phi = B.sin(phi)
        D = [B.to_ball(1, precision), B.to_ball(2 * alpha, precision)]
    k = 1
    limit = (angle_n if angle_n is not None else candidates[0]) + 2
    boundary = False
    while True:
        try:
            s = sign(D[k])
        except PrecisionError:
            if not candidates or candidates[0] - 1 != k:
                raise PrecisionError(
                    f"sign of sin({k + 1}phi) is undecidable at {precision} bits"
                ) from None
            s, boundary = 0, True
        if s <= 0:
            n = k
            boundary = boundary or s == 0
            break
        k += 1
        if k > limit:
            raise ConsistencyError("scaled sines disagree with the angle estimate")
        if exact:
            D.append(2 * alpha * D[k - 1] - beta_sq * D[k - 2])
        else:
            D.append(beta**k * B.sin(phi * (k + 1)) / sin_phi)

    if angle_n is not None and angle_n != n:
        raise ConsistencyError(f"angle route gives n={angle_n}, sign route gives n={n}")
    if candidates and n not in (candidates[0] - 1, candidates[0]):
        raise ConsistencyError("n is inconsistent with pi/phi")
    if n < 2:
        raise ConsistencyError("n must be at least 2 for a pair with positive real part")
    return TrigAngle(alpha, beta_sq, phi, n, boundary, tuple(D[: n + 1]))


def trig_multiplier(root, precision=DEFAULT_PRECISION):
    angle = trig_angle(root, precision)
    n, D, beta_sq = angle.n, angle.scaled_sines, angle.beta_sq
    exact = isinstance(D[0], Fraction)

    coeffs = [D[k] * beta_sq ** (n - 1 - k) for k in range(n)]
    for k, c in enumerate(coeffs):
        if sign(c) <= 0:
            raise PrecisionError(f"multiplier coefficient {k} is not certifiably positive")
    c0, cn, cn1 = beta_sq**n, -D[n], D[n - 1]
    assumptions = []
    if angle.boundary and not exact and not is_zero(cn):
        cn = B.to_ball(0, precision)
        assumptions.append(
            f"(n+1)*phi = pi taken as exact for root re={float(root.re):.17g}: "
            f"sin({n + 1}phi) is within its error bound of zero"
        )
    g = Polynomial(coeffs)
    content = Fraction(1)
    if exact:
        primitive = g.primitive()
        content = g.leading / primitive.leading
        g = primitive
        c0, cn, cn1 = c0 / content, cn / content, cn1 / content

    tm = TrigMultiplier(root, angle, g, (c0, cn, cn1), _scale(angle, content, precision), tuple(assumptions))
    if sign(tm.product_form[1]) < 0:
        raise ConsistencyError("degree-n coefficient of f*g is negative")
    _check_identity(quadratic(root) * g, tm.product_polynomial(), "f*g against its three-term form")
    return tm


def _scale(angle, content, precision):
    # g = scale * (sum beta^(n-1-k) sin((k+1)phi) x^k)
    beta = B.to_ball(angle.beta, precision)
    return beta ** (angle.n - 1) / (B.sin(angle.phi) * B.to_ball(content, precision))


def _check_identity(lhs, rhs, what):
    diff = lhs - rhs
    if lhs.is_exact() and rhs.is_exact():
        if not diff.is_zero():
            raise ConsistencyError(f"{what}: exact mismatch at degree {diff.trailing_zeros()}")
        return
    for k, c in enumerate(diff.coeffs):
        if isinstance(c, Ball) and not c.contains_zero():
            raise ConsistencyError(f"{what}: residual at degree {k} exceeds its error bound")
        if isinstance(c, Fraction) and c != 0:
            raise ConsistencyError(f"{what}: residual at degree {k}")


def geometric_multiplier(alpha, q):
    if not isinstance(q, int) or q < 1:
        raise DomainError("q must be a positive integer")
    if sign(alpha) <= 0:
        raise DomainError("geometric multipliers need alpha > 0")
    h = Polynomial([alpha ** (q - 1 - i) for i in range(q)])
    _check_identity(Polynomial([-alpha, 1]) * h, Polynomial.monomial(q) - alpha**q, "(x - alpha) h")
    return GeometricMultiplier(alpha, q, h)


# -- assembly -------------------------------------------------------------------


@dataclass
class _LBuild:
    factors: tuple
    L: Polynomial
    G: Polynomial
    q: int
    trig: tuple
    assumptions: list


def _build_L(part, precision):
    factors = expand_from_partition(part)
    trig = tuple(trig_multiplier(r, precision) for r in part.lambda3)
    G = product(t.g ** t.root.mult for t in trig)
    if factors.F.is_exact() and G.is_exact():
        L = product([factors.F1, factors.F2, factors.F3, G])
    else:
        # F3*G assembled from the verified three-term products keeps its
        # structural zeros exactly zero
        L = product([factors.F1, factors.F2] + [t.product_polynomial() ** t.root.mult for t in trig])
    for k, c in enumerate(L.coeffs):
        if sign(c) < 0:
            raise ConsistencyError(f"L has a negative coefficient at degree {k}")
    if sign(L.coeffs[0]) <= 0 or sign(L.leading) <= 0:
        raise ConsistencyError("L must have positive constant and leading coefficients")
    assumptions = [a for t in trig for a in t.assumptions]
    return _LBuild(factors, L, G, L.degree + 1, trig, assumptions)


def build_L_and_q(part, precision=DEFAULT_PRECISION):
    b = _build_L(part, precision)
    return b.L, b.G, b.q


def _mode(*polys):
    return "exact" if all(p.is_exact() for p in polys) else "approximate"


def certify_positive(part, precision=DEFAULT_PRECISION):
    """Multiplier G with positive coefficients such that F*G has positive coefficients."""
    if part.lambda4:
        raise NotPositiveError(
            f"F has {count_positive_roots(part)} positive root(s) and is not positive on (0, inf)"
        )
    b = _build_L(part, precision)
    F = b.factors.F
    if F.is_exact() and b.G.is_exact():
        FG = F * b.G
        _check_identity(FG, b.L, "F*G against L")
    else:
        _check_identity(F * b.G, b.L, "F*G against L")
        FG = b.L
    one = Polynomial([1])
    return Certificate(
        kind="positivity",
        F=F,
        G=b.G,
        H=one,
        K=b.G,
        L=b.L,
        M=one,
        FK=FG,
        p=0,
        q=b.q,
        V_FK=sign_variations(FG),
        nu_FK=0,
        mode=_mode(F, b.G),
        precision_bits=precision,
        trig=b.trig,
        assumptions=tuple(b.assumptions),
    )


def _sparse_M(part, q):
    # prod (y - alpha^q)^mu, then y -> x^q
    N = product(Polynomial([-(r.re**q), 1]) ** r.mult for r in part.lambda4)
    coeffs = []
    for i, c in enumerate(N.coeffs):
        coeffs.append(c)
        if i < N.degree:
            coeffs.extend([Fraction(0)] * (q - 1))
    return Polynomial(coeffs)


def certify_variations(part, precision=DEFAULT_PRECISION):
    """Multiplier K with V(F*K) = p, the number of positive roots of F."""
    b = _build_L(part, precision)
    q, p = b.q, count_positive_roots(part)
    F = b.factors.F
    geometric = tuple((geometric_multiplier(r.re, q), r.mult) for r in part.lambda4)
    H = product(g.h**m for g, m in geometric)
    M = _sparse_M(part, q)
    _check_identity(b.factors.F4 * H, M, "F4*H against prod (x^q - alpha^q)^mu")
    K = b.G * H
    FK = F * K
    LM = b.L * M
    _check_identity(FK, LM, "F*K against L*M")

    assumptions = list(b.assumptions)
    if FK.is_exact():
        V = sign_variations(FK)
    else:
        V = sign_variations(LM)
        tolerant = []
        if sign_variations(FK, zero_tolerant=True, events=tolerant) != V:
            raise ConsistencyError("ball product F*K disagrees with L*M on sign variations")
        if tolerant:
            assumptions.append(
                f"{len(tolerant)} coefficient(s) of F*K are zero within error bounds and were read as zero"
            )
        FK = LM
    if V != p or sign_variations(M) != p:
        raise ConsistencyError(f"V(F*K) = {V} but F has {p} positive root(s)")
    return Certificate(
        kind="variations",
        F=F,
        G=b.G,
        H=H,
        K=K,
        L=b.L,
        M=M,
        FK=FK,
        p=p,
        q=q,
        V_FK=V,
        nu_FK=V - p,
        mode=_mode(F, K),
        precision_bits=precision,
        trig=b.trig,
        geometric=geometric,
        assumptions=tuple(assumptions),
    )


# -- coefficient input ------------------------------------------------------------


def prepare(poly, precision=DEFAULT_PRECISION, cluster_radius=None):
    """Strip zero roots, normalise the sign and locate the roots of ``poly``.

    Returns ``(partition, zero_multiplicity, flipped, spec)``.
    """
    core, m = strip_zero_roots(poly)
    core, flipped = sign_normalize(core)
    if core.degree == 0:
        spec = RootSpec(())
    else:
        spec = find_roots(core, precision, cluster_radius)
    return partition_roots(spec), m, flipped, spec


def certify_polynomial(poly, kind, precision=DEFAULT_PRECISION, cluster_radius=None):
    """Certificate for a polynomial given by coefficients rather than roots.

    The multipliers are built for the monic polynomial of the recovered roots;
    they serve the input unchanged because a nonzero constant factor and a
    power of x change neither the sign variations of F*K nor its positive
    roots.
    """
    part, m, flipped, spec = prepare(poly, precision, cluster_radius)
    if kind == "positivity":
        if flipped:
            raise NotPositiveError("leading coefficient is negative, so F is negative for large x")
        cert = certify_positive(part, precision)
    elif kind == "variations":
        cert = certify_variations(part, precision)
    else:
        raise ValueError(f"unknown certificate kind {kind!r}")
    FK = poly * cert.K
    mode = "approximate" if spec.approximate or cert.mode == "approximate" else "exact"
    if mode == "exact":
        V = sign_variations(FK)
    else:
        V = cert.V_FK
        FK = cert.FK.shift(m) * poly.leading
    return replace(
        cert,
        F=poly,
        FK=FK,
        V_FK=V,
        mode=mode,
        zero_root_multiplicity=m,
        flipped=flipped,
        notes=spec.notes,
    )
