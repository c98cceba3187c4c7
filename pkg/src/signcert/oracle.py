"""Brute-force references and seeded generators for property tests.

Everything here is deliberately naive and shares no code with the paths it
checks: variation counting is literal pair counting, products are
schoolbook loops over plain Fractions, and positivity is spot-checked on a
grid.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .ball import Ball
from .errors import GenerationError
from .rootkit import Root, RootSpec

CLASSES = ("lambda1", "lambda2", "lambda3", "lambda4")


def _as_range(v):
    if isinstance(v, int):
        return v, v
    lo, hi = v
    return int(lo), int(hi)


@dataclass
class GenConfig:
    """Generator settings.

    ``counts`` maps each class name to a count or an inclusive ``(lo, hi)``
    range of distinct roots.  ``min_im_ratio`` bounds im/re from below for
    roots with positive real part, which keeps the trigonometric degree n
    small.  ``imag_axis_prob`` is the chance that a complex root with
    nonpositive real part sits on the imaginary axis.
    """

    counts: dict = field(default_factory=lambda: {c: 0 for c in CLASSES})
    max_degree: int | None = None
    max_mult: int = 1
    magnitude: int = 5
    max_den: int = 4
    seed: int = 0
    mode: str = "exact"
    precision: int = 256
    min_separation: Fraction | None = None
    imag_axis_prob: float = 0.0
    min_im_ratio: Fraction = Fraction(1, 4)
    max_attempts: int = 200

    def __post_init__(self):
        unknown = set(self.counts) - set(CLASSES)
        if unknown:
            raise GenerationError(f"unknown root classes {sorted(unknown)}")
        for c in CLASSES:
            lo, hi = _as_range(self.counts.get(c, 0))
            if lo < 0 or hi < lo:
                raise GenerationError(f"bad count range for {c}: {self.counts.get(c)}")
        if self.max_mult < 1 or self.magnitude < 1 or self.max_den < 1:
            raise GenerationError("bounds must be positive")
        if self.mode not in ("exact", "float"):
            raise GenerationError(f"mode must be 'exact' or 'float', got {self.mode!r}")
        if not 0 <= self.seed < 2**64:
            raise GenerationError("seed must be a 64-bit unsigned integer")


def _rational(rng, cfg, positive=True):
    den = rng.randint(1, cfg.max_den)
    num = rng.randint(1, cfg.magnitude * den)
    return Fraction(num if positive else -num, den)


def _draw_root(rng, cfg, cls):
    if cls == "lambda1":
        return _rational(rng, cfg, positive=False), Fraction(0)
    if cls == "lambda4":
        return _rational(rng, cfg), Fraction(0)
    im = _rational(rng, cfg)
    if cls == "lambda2":
        re = Fraction(0) if rng.random() < cfg.imag_axis_prob else _rational(rng, cfg, positive=False)
        return re, im
    re = _rational(rng, cfg)
    if im < re * cfg.min_im_ratio:
        im = re * cfg.min_im_ratio + im
    return re, im


def _far_enough(a, b, sep_sq):
    # compare b and conj(b) against a; distances squared, exact
    (ar, ai), (br, bi) = a, b
    d1 = (ar - br) ** 2 + (ai - bi) ** 2
    d2 = (ar - br) ** 2 + (ai + bi) ** 2
    return min(d1, d2) >= sep_sq and d1 > 0


def random_rootspec(cfg):
    """Deterministic RootSpec for ``cfg``; the seed fixes the output."""
    rng = random.Random(cfg.seed)
    sep_sq = cfg.min_separation**2 if cfg.min_separation else Fraction(0)
    for _ in range(cfg.max_attempts):
        counts = {c: rng.randint(*_as_range(cfg.counts.get(c, 0))) for c in CLASSES}
        points = []
        ok = True
        for cls in CLASSES:
            for _ in range(counts[cls]):
                for _ in range(cfg.max_attempts):
                    pt = _draw_root(rng, cfg, cls)
                    if all(_far_enough(pt, q, sep_sq) for q, _ in points):
                        if pt[1] == 0 or 4 * pt[1] ** 2 >= sep_sq:
                            break
                else:
                    ok = False
                    break
                points.append((pt, cls))
            if not ok:
                break
        if not ok:
            continue
        mults = [rng.randint(1, cfg.max_mult) for _ in points]
        degree = sum(m * (1 if pt[1] == 0 else 2) for (pt, _), m in zip(points, mults))
        if cfg.max_degree is not None and degree > cfg.max_degree:
            continue
        roots = []
        for ((re, im), _), m in zip(points, mults):
            re_v, im_sq = re, im * im
            if cfg.mode == "float":
                re_v, im_sq = Ball.exact(re_v, cfg.precision), Ball.exact(im_sq, cfg.precision)
                if im == 0:
                    im_sq = Fraction(0)
            roots.append(Root(re_v, im_sq, m))
        return RootSpec(tuple(roots))
    raise GenerationError(f"could not satisfy the generator constraints in {cfg.max_attempts} attempts")


# -- references -----------------------------------------------------------------


def _naive_sign(c):
    if isinstance(c, Ball):
        lo, hi = c.lo, c.hi
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if lo == 0 and hi == 0:
            return 0
        raise ValueError("ball straddles zero")
    if c > 0:
        return 1
    if c < 0:
        return -1
    return 0


def brute_variations(coeffs):
    """Count pairs j < k with a_j * a_k < 0 and every a_i between them zero."""
    signs = [_naive_sign(c) for c in coeffs]
    count = 0
    for j in range(len(signs)):
        for k in range(j + 1, len(signs)):
            if signs[k] == 0:
                continue
            if signs[j] * signs[k] < 0:
                count += 1
            break
    return count


def naive_multiply(a, b):
    """Schoolbook product of two ascending coefficient lists of Fractions."""
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i in range(len(a)):
        for j in range(len(b)):
            out[i + j] += Fraction(a[i]) * Fraction(b[j])
    while out and out[-1] == 0:
        out.pop()
    return out


def naive_expand(spec):
    """Monic coefficient list of the polynomial with the roots of an exact spec."""
    coeffs = [Fraction(1)]
    for r in spec.roots:
        if r.im_sq == 0:
            factor = [-r.re, Fraction(1)]
        else:
            factor = [r.re * r.re + r.im_sq, -2 * r.re, Fraction(1)]
        for _ in range(r.mult):
            coeffs = naive_multiply(coeffs, factor)
    return coeffs


def grid_positive_check(p, samples, range_max, octaves=20):
    """Sampling check, not a proof: is ``p`` > 0 at ``samples`` points of (0, range_max]?

    Points are spaced geometrically over ``octaves`` halvings below
    ``range_max`` and evaluated exactly.  Ball coefficients count as positive
    only where the evaluated ball is certifiably positive.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    range_max = Fraction(range_max)
    if range_max <= 0:
        raise ValueError("range_max must be positive")
    coeffs = list(p.coeffs)
    for i in range(samples):
        t = (samples - 1 - i) / (samples - 1) if samples > 1 else 0.0
        x = range_max * Fraction(2.0 ** (-octaves * t)).limit_denominator(2**40)
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        try:
            if _naive_sign(acc) <= 0:
                return False
        except ValueError:
            return False
    return True
