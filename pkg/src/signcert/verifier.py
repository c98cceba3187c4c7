"""Independent checks of certificates and of the identities they rest on.

Nothing here reuses the construction code: every product is recomputed from
the polynomial under test and the multipliers a certificate claims.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import ball as B
from .ball import DEFAULT_PRECISION, Ball, is_zero, sign
from .errors import ConsistencyError, DomainError, PrecisionError
from .polyarith import Polynomial, format_scalar, product, sign_variations
from .rootkit import RootSpec, count_positive_roots, expand_from_partition, partition_roots


@dataclass(frozen=True)
class DescartesAudit:
    V: int
    Z: int
    nu: int
    zero_root_multiplicity: int = 0

    def __post_init__(self):
        if self.V != self.Z + self.nu or self.nu < 0 or self.nu % 2:
            raise ConsistencyError(f"Descartes parity violated: V={self.V}, Z={self.Z}")


@dataclass
class CheckReport:
    check: str
    passed: bool
    witnesses: list = field(default_factory=list)
    mode: str = "exact"
    tolerance: str = "exact"
    assumptions: list = field(default_factory=list)
    metrics: dict = field(default_factory=dict)
    details: list = field(default_factory=list)
    undecidable: bool = False

    def __post_init__(self):
        if not self.passed and not self.witnesses:
            raise ValueError(f"failed check {self.check!r} needs at least one witness")

    def to_dict(self):
        out = {
            "check": self.check,
            "passed": self.passed,
            "witnesses": self.witnesses,
            "mode": self.mode,
            "tolerance": self.tolerance,
        }
        if self.assumptions:
            out["assumptions"] = self.assumptions
        if self.metrics:
            out["metrics"] = self.metrics
        if self.details:
            out["details"] = [d.to_dict() for d in self.details]
        if self.undecidable:
            out["undecidable"] = True
        return out


def _mode_of(*polys):
    precs = [p.precision for p in polys if p.precision]
    if not precs:
        return "exact", "exact"
    return "ball", f"rigorous ball radii at {max(precs)} bits"


def _witness(degree, value, reason):
    return {"degree": degree, "value": format_scalar(value), "reason": reason}


# -- Descartes audit -------------------------------------------------------------


def descartes_audit(spec):
    """(V, Z, nu) for the monic polynomial with the given roots."""
    zero_mult = sum(r.mult for r in spec.roots if r.is_real and is_zero(r.re))
    rest = RootSpec(tuple(r for r in spec.roots if not (r.is_real and is_zero(r.re))))
    part = partition_roots(rest)
    F = expand_from_partition(part).F
    V = sign_variations(F)
    Z = count_positive_roots(part)
    return DescartesAudit(V, Z, V - Z, zero_mult)


# -- coefficient positivity -----------------------------------------------------


def check_positive_coefficients(p, strict=False, zero_tolerant=False):
    """Every nonzero coefficient positive (``strict`` also forbids zeros).

    Ball coefficients must have certified signs.  With ``zero_tolerant`` a
    coefficient within its error bound of zero is read as zero and logged as
    an assumption; otherwise it raises :class:`PrecisionError`.
    """
    if p.is_zero():
        raise DomainError("the zero polynomial is rejected by coefficient checks")
    mode, tol = _mode_of(p)
    name = "positive_coefficients_strict" if strict else "positive_coefficients"
    witnesses, assumptions = [], []
    for k, c in enumerate(p.coeffs):
        try:
            s = sign(c)
        except PrecisionError:
            if zero_tolerant and not strict:
                assumptions.append(f"coefficient at degree {k} read as zero (within error bound)")
                continue
            raise PrecisionError(f"sign of coefficient at degree {k} is undecidable") from None
        if s < 0:
            witnesses.append(_witness(k, c, "negative"))
        elif s == 0 and strict:
            witnesses.append(_witness(k, c, "zero"))
    return CheckReport(name, not witnesses, witnesses, mode, tol, assumptions)


# -- the three identities ------------------------------------------------------------


@dataclass(frozen=True)
class PiMultiple:
    """An angle given as an exact rational multiple of pi."""

    frac: Fraction

    def __post_init__(self):
        object.__setattr__(self, "frac", Fraction(self.frac))

    def times(self, k, precision):
        m = self.frac * k
        if (2 * m).denominator == 1:
            return None, m
        return B.pi(precision) * B.to_ball(m, precision), m


def _sin_k(phi, k, precision):
    if isinstance(phi, PiMultiple):
        ball, m = phi.times(k, precision)
        if ball is None:
            return Fraction([0, 1, 0, -1][int(2 * m) % 4])
        return B.sin(ball)
    return B.sin(B.to_ball(phi, precision) * k)


def _cos_1(phi, precision):
    if isinstance(phi, PiMultiple):
        ball, m = phi.times(1, precision)
        if ball is None:
            return Fraction([1, 0, -1, 0][int(2 * m) % 4])
        return B.cos(ball)
    return B.cos(B.to_ball(phi, precision))


def lemma1_n(phi, precision=DEFAULT_PRECISION):
    """The integer n with n*phi < pi <= (n+1)*phi."""
    if isinstance(phi, PiMultiple):
        return math.ceil(1 / phi.frac) - 1
    ratio = B.pi(precision) / B.to_ball(phi, precision)
    lo = math.ceil(Fraction(*ratio.lo.as_integer_ratio()))
    hi = math.floor(Fraction(*ratio.hi.as_integer_ratio()))
    if lo < hi:
        raise PrecisionError("pi/phi is too uncertain to fix n")
    if lo == hi:
        return int(lo) - 1
    return int(math.ceil(ratio.mid_fraction())) - 1


def check_lemma1(beta, phi, n=None, precision=DEFAULT_PRECISION):
    """Multiply f = x^2 - 2 beta cos(phi) x + beta^2 by the sine-form g and
    compare with beta^(n+1) sin(phi) - beta sin((n+1)phi) x^n + sin(n phi) x^(n+1).

    ``phi`` is a Fraction/Ball in radians or a :class:`PiMultiple`; sines at
    multiples of pi/2 are then exact.
    """
    sin_phi = _sin_k(phi, 1, precision)
    if sign(sin_phi) <= 0:
        raise DomainError("check_lemma1 needs sin(phi) > 0")
    if n is None:
        n = lemma1_n(phi, precision)
    n = int(n)
    if n < 1:
        raise DomainError("n must be at least 1")
    sines = [None] + [_sin_k(phi, k, precision) for k in range(1, n + 2)]
    f = Polynomial([beta * beta, -2 * beta * _cos_1(phi, precision), 1])
    g = Polynomial([beta ** (n - 1 - k) * sines[k + 1] for k in range(n)])
    lhs = f * g
    rhs = Polynomial([beta ** (n + 1) * sin_phi]) + Polynomial.monomial(n, -beta * sines[n + 1])
    rhs = rhs + Polynomial.monomial(n + 1, sines[n])
    diff = lhs - rhs
    mode, tol = _mode_of(lhs, rhs)

    witnesses = []
    max_dev = Fraction(0)
    max_bound = Fraction(0)
    for k in range(n + 2):
        c = diff[k]
        if isinstance(c, Ball):
            dev = abs(c.mid_fraction())
            bound = Fraction(*c.rad.as_integer_ratio())
            ok = c.contains_zero()
        else:
            dev, bound, ok = abs(c), Fraction(0), c == 0
        max_dev = max(max_dev, dev)
        max_bound = max(max_bound, bound)
        if not ok:
            witnesses.append(_witness(k, c, "residual exceeds its error bound"))
    scale = max((abs(Fraction(x.mid_fraction()) if isinstance(x, Ball) else x) for x in lhs.coeffs), default=1)
    metrics = {
        "n": n,
        "max_deviation": float(max_dev),
        "max_error_bound": float(max_bound),
        "relative_error_bound": float(max_bound / scale) if scale else 0.0,
    }
    return CheckReport("lemma1_trig_identity", not witnesses, witnesses, mode, tol, metrics=metrics)


def check_lemma2(roots):
    """V(prod (x - a_i)^mu_i) equals the number of factors, with strict alternation.

    ``roots`` holds positive scalars or ``(value, multiplicity)`` pairs.
    """
    pairs = [r if isinstance(r, tuple) else (r, 1) for r in roots]
    for a, _ in pairs:
        if sign(a) <= 0:
            raise DomainError(f"check_lemma2 needs positive roots, got {a}")
    m = sum(mu for _, mu in pairs)
    P = product(Polynomial([-a, 1]) ** mu for a, mu in pairs)
    mode, tol = _mode_of(P)
    witnesses = []
    V = sign_variations(P)
    if V != m:
        witnesses.append({"reason": f"V = {V}, expected {m}"})
    for k, c in enumerate(P.coeffs):
        expected = (-1) ** (m - k)
        if sign(c) != expected:
            witnesses.append(_witness(k, c, "sign does not alternate"))
    return CheckReport("lemma2_alternating_product", not witnesses, witnesses, mode, tol, metrics={"V": V, "m": m})


def check_lemma3(L, M, q, strict_hypothesis=False):
    """V(L*M) = V(M) for M supported on multiples of q and deg L <= q - 1.

    By default L only needs nonnegative coefficients with positive constant
    and leading terms.  ``strict_hypothesis`` demands all q coefficients of L
    strictly positive instead.
    """
    problems = []
    if L.is_zero() or M.is_zero():
        raise DomainError("check_lemma3 needs nonzero L and M")
    if L.degree > q - 1:
        problems.append(f"deg L = {L.degree} exceeds q - 1 = {q - 1}")
    for k in range(q if strict_hypothesis else L.degree + 1):
        s = sign(L[k])
        if s < 0 or (strict_hypothesis and s == 0):
            problems.append(f"L coefficient at degree {k} is {'zero' if s == 0 else 'negative'}")
    if sign(L.coeffs[0]) <= 0 or sign(L.leading) <= 0:
        problems.append("L needs positive constant and leading coefficients")
    for k, c in enumerate(M.coeffs):
        if k % q and not is_zero(c):
            problems.append(f"M has a nonzero coefficient at degree {k}, not a multiple of q")
    if problems:
        raise DomainError("block-replacement hypothesis violated: " + "; ".join(problems))
    V_LM = sign_variations(L * M)
    V_M = sign_variations(M)
    mode, tol = _mode_of(L, M)
    witnesses = [] if V_LM == V_M else [{"reason": f"V(LM) = {V_LM} but V(M) = {V_M}"}]
    return CheckReport("lemma3_block_replacement", not witnesses, witnesses, mode, tol, metrics={"V_LM": V_LM, "V_M": V_M})


# -- certificates -------------------------------------------------------------------


def _same(a, b):
    """Coefficient-wise equality: exact, or every difference ball contains zero."""
    diff = a - b
    bad = []
    for k, c in enumerate(diff.coeffs):
        if isinstance(c, Ball):
            if not c.contains_zero():
                bad.append(_witness(k, c, "difference exceeds error bound"))
        elif c != 0:
            bad.append(_witness(k, c, "difference"))
    return bad


def _sub(name, fn, mode, tol):
    try:
        witnesses, assumptions = fn()
        return CheckReport(name, not witnesses, witnesses, mode, tol, assumptions)
    except PrecisionError as exc:
        return CheckReport(name, False, [{"reason": f"undecidable: {exc}"}], mode, tol, undecidable=True)
    except (DomainError, ConsistencyError, ZeroDivisionError) as exc:
        return CheckReport(name, False, [{"reason": str(exc)}], mode, tol)


def _positive(p, zero_tolerant, what):
    if p.is_zero():
        return [{"reason": f"{what} is the zero polynomial"}], []
    r = check_positive_coefficients(p, strict=False, zero_tolerant=zero_tolerant)
    return r.witnesses, r.assumptions


def verify_certificate(F, cert):
    """Recheck every claim of ``cert`` against the polynomial ``F``.

    Returns a failed report (never raises) when a claim does not hold or a
    sign cannot be decided.
    """
    mode, tol = _mode_of(F, cert.G, cert.K, cert.L, cert.M)
    tolerant = mode != "exact"
    subs = []

    if cert.kind == "positivity":
        G = cert.G
        subs.append(_sub("G_positive_coefficients", lambda: _positive(G, tolerant, "G"), mode, tol))
        subs.append(_sub("FG_positive_coefficients", lambda: _positive(F * G, tolerant, "F*G"), mode, tol))

        def claims():
            w = []
            if cert.p != 0:
                w.append({"reason": f"positivity certificate claims p = {cert.p}"})
            return w, []

        subs.append(_sub("claimed_counts", claims, mode, tol))
    elif cert.kind == "variations":
        subs.extend(_variation_checks(F, cert, tolerant, mode, tol))
    else:
        subs.append(CheckReport("kind", False, [{"reason": f"unknown kind {cert.kind!r}"}], mode, tol))

    witnesses = [dict(w, check=s.check) for s in subs for w in s.witnesses]
    assumptions = [a for s in subs for a in s.assumptions]
    return CheckReport(
        f"certificate_{cert.kind}",
        all(s.passed for s in subs),
        witnesses,
        mode,
        tol,
        assumptions,
        details=subs,
        undecidable=any(s.undecidable for s in subs),
    )


def _variation_checks(F, cert, tolerant, mode, tol):
    K, L, M, p, q = cert.K, cert.L, cert.M, cert.p, cert.q
    out = []
    out.append(_sub("K_positive_coefficients", lambda: _positive(K, tolerant, "K"), mode, tol))

    def L_shape():
        w, a = _positive(L, tolerant, "L")
        if not L.is_zero():
            if L.degree > q - 1:
                w.append({"reason": f"deg L = {L.degree} exceeds q - 1 = {q - 1}"})
            if sign(L.coeffs[0]) <= 0:
                w.append(_witness(0, L.coeffs[0], "L(0) must be positive"))
        return w, a

    out.append(_sub("L_shape", L_shape, mode, tol))

    def M_shape():
        w = []
        if M.degree != p * q:
            w.append({"reason": f"deg M = {M.degree}, expected p*q = {p * q}"})
        if sign(M.leading - 1) != 0 if isinstance(M.leading, Fraction) else not (M.leading - 1).contains_zero():
            w.append(_witness(M.degree, M.leading, "M is not monic"))
        for k, c in enumerate(M.coeffs):
            if k % q:
                if not is_zero(c):
                    w.append(_witness(k, c, "M not supported on multiples of q"))
            elif sign(c) != (-1) ** (p - k // q):
                w.append(_witness(k, c, "M coefficients do not alternate strictly"))
        if sign_variations(M) != p:
            w.append({"reason": f"V(M) = {sign_variations(M)}, expected {p}"})
        return w, []

    out.append(_sub("M_shape", M_shape, mode, tol))

    def M_roots():
        w = []
        if sum(m for _, m in cert.lambda4) != p:
            w.append({"reason": "positive-root multiplicities do not sum to p"})
        for a, _ in cert.lambda4:
            if sign(a) <= 0:
                w.append({"reason": f"claimed positive root {format_scalar(a)} is not positive"})
        expected = product(
            (Polynomial.monomial(q) - a**q) ** m for a, m in cert.lambda4
        )
        w.extend(_same(M, expected))
        return w, []

    out.append(_sub("M_from_positive_roots", M_roots, mode, tol))

    FK = F * K

    def FK_LM():
        m = F.trailing_zeros()
        # K serves the monic core of F, so only lc(F) and x^m remain
        return _same(FK, (L * M * F.leading).shift(m)), []

    out.append(_sub("FK_equals_LM", FK_LM, mode, tol))

    def variations():
        events = []
        V = sign_variations(FK, zero_tolerant=tolerant, events=events)
        w = []
        if V != p:
            w.append({"reason": f"V(F*K) = {V}, expected p = {p}"})
        if cert.V_FK != V:
            w.append({"reason": f"certificate claims V(F*K) = {cert.V_FK}, recomputed {V}"})
        if cert.nu_FK != V - p:
            w.append({"reason": f"certificate claims nu = {cert.nu_FK}, recomputed {V - p}"})
        a = [f"{len(events)} coefficient(s) of F*K read as zero within error bounds"] if events else []
        return w, a

    out.append(_sub("V_FK_equals_p", variations, mode, tol))
    return out
