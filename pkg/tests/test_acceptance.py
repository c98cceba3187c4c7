"""The ten acceptance criteria, each at its stated size, tolerance and time limit.

Every criterion records one PASS/FAIL line; the lines are printed in the
pytest terminal summary and when this file is run as a script.
"""

from __future__ import annotations

import functools
import io
import json
import math
import random
import time
from fractions import Fraction
from pathlib import Path

from signcert import ball as B
from signcert.certbuilder import build_L_and_q, certify_positive, certify_variations, trig_angle
from signcert.cli import run
from signcert.oracle import GenConfig, brute_variations, naive_expand, naive_multiply, random_rootspec
from signcert.polyarith import Polynomial, sign_variations
from signcert.rootkit import Root, RootSpec, find_roots, partition_roots
from signcert.verifier import (
    check_lemma1,
    check_lemma2,
    check_lemma3,
    check_positive_coefficients,
    descartes_audit,
    verify_certificate,
)

GOLDEN = Path(__file__).parent / "golden" / "worked_example.json"
RESULTS: list[str] = []
CLASSES = ("lambda1", "lambda2", "lambda3", "lambda4")


def criterion(number, title, limit_s):
    def wrap(fn):
        @functools.wraps(fn)
        def test():
            start = time.perf_counter()
            try:
                detail = fn()
                elapsed = time.perf_counter() - start
                assert elapsed < limit_s, f"took {elapsed:.2f} s, limit {limit_s} s"
            except AssertionError as exc:
                RESULTS.append(f"criterion {number:2d} FAIL  {title}: {exc}")
                raise
            RESULTS.append(f"criterion {number:2d} PASS  {title}: {detail} ({elapsed:.2f} s < {limit_s} s)")

        return test

    return wrap


def _cli_json(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, json.loads(out.getvalue())


@criterion(1, "introductory examples audited exactly", 1.0)
def test_criterion_01_intro_examples():
    for poly, expected in (("2,-3,1", (2, 2, 0)), ("5,-3,1", (2, 0, 2))):
        code, d = _cli_json("audit", "--poly", poly)
        assert code == 0 and (d["V"], d["Z"], d["nu"]) == expected, (poly, d)
        assert "approximate" not in d
    a = descartes_audit(RootSpec((Root(Fraction(1)), Root(Fraction(2)))))
    assert (a.V, a.Z, a.nu) == (2, 2, 0)
    a = descartes_audit(RootSpec((Root(Fraction(3, 2), Fraction(11, 4)),)))
    assert (a.V, a.Z, a.nu) == (2, 0, 2)
    return "(V, Z, nu) = (2, 2, 0) and (2, 0, 2)"


@criterion(2, "trigonometric product identity at 256 bits", 10.0)
def test_criterion_02_trig_identity():
    rng = random.Random(0x5EED0002)
    worst = 0.0
    for _ in range(500):
        beta = Fraction(rng.randint(1, 10_000), 1000)
        phi = Fraction(rng.uniform(0.05, math.pi / 2 - 0.05)).limit_denominator(10**12)
        report = check_lemma1(beta, phi, precision=256)
        assert report.passed, (beta, phi, report.witnesses)
        rel = report.metrics["relative_error_bound"]
        assert rel <= 2.0**-128, (beta, phi, rel)
        worst = max(worst, rel)
    return f"500 pairs, worst relative bound 2^{math.log2(worst):.1f}"


@criterion(3, "positivity certificates for root specs without positive roots", 60.0)
def test_criterion_03_positivity():
    zeros = 0
    for seed in range(200):
        cfg = GenConfig(
            counts={"lambda1": (0, 3), "lambda2": (0, 2), "lambda3": (1, 2)},
            max_degree=12,
            max_mult=3,
            seed=seed,
            imag_axis_prob=0.3,
        )
        part = partition_roots(random_rootspec(cfg))
        cert = certify_positive(part)
        report = verify_certificate(cert.F, cert)
        assert report.passed, (seed, report.witnesses)
        FG = cert.F * cert.G
        assert FG == cert.FK
        positive = check_positive_coefficients(FG)
        assert positive.passed, (seed, positive.witnesses)
        # every nonzero coefficient is certifiably positive; zeros are exact zeros
        for c in FG.coeffs:
            assert c == 0 or B.sign(c) > 0
        zeros += sum(1 for c in FG.coeffs if c == 0)
    return f"200 specs verified, {zeros} exact zero coefficients in total"


@criterion(4, "variation certificates with V(FK) = p", 120.0)
def test_criterion_04_variations():
    rng = random.Random(0x5EED0004)
    with_trig = 0
    for seed in range(200):
        p = rng.randint(1, 4)
        cfg = GenConfig(
            counts={"lambda1": (0, 2), "lambda2": (0, 1), "lambda3": (0, 1), "lambda4": p},
            max_degree=10,
            seed=seed,
            imag_axis_prob=0.3,
            max_attempts=1000,
        )
        spec = random_rootspec(cfg)
        part = partition_roots(spec)
        cert = certify_variations(part)
        assert cert.p == p
        FK = cert.F * cert.K
        assert sign_variations(FK) == p and cert.nu_FK == 0
        assert FK == cert.L * cert.M, seed
        assert verify_certificate(cert.F, cert).passed, seed
        with_trig += bool(part.lambda3)
    return f"200 specs, exact F*K = L*M in all, {with_trig} with complex pairs of positive real part"


@criterion(5, "Descartes parity and brute-force variation count", 30.0)
def test_criterion_05_parity():
    for seed in range(1000):
        cfg = GenConfig(
            counts={c: (0, 3) for c in CLASSES},
            max_degree=16,
            max_mult=3,
            seed=seed,
            imag_axis_prob=0.3,
            max_attempts=1000,
        )
        spec = random_rootspec(cfg)
        audit = descartes_audit(spec)
        assert audit.nu >= 0 and audit.nu % 2 == 0, seed
        assert audit.V == brute_variations(naive_expand(spec)), seed
    return "1000 specs, zero failures"


@criterion(6, "alternating products of positive linear factors", 10.0)
def test_criterion_06_alternating_products():
    rng = random.Random(0x5EED0006)
    cases = 0
    for m in range(1, 31):
        for _ in range(3):
            roots = [Fraction(rng.randint(1, 1000), rng.randint(1, 100)) for _ in range(m)]
            report = check_lemma2(roots)
            assert report.passed and report.metrics["V"] == m, (m, report.witnesses)
            cases += 1
    return f"{cases} products, m = 1..30, all exact"


def _sparse(poly_in_y, q):
    coeffs = []
    for i, c in enumerate(poly_in_y):
        coeffs.append(c)
        if i < len(poly_in_y) - 1:
            coeffs.extend([Fraction(0)] * (q - 1))
    return Polynomial(coeffs)


@criterion(7, "block replacement V(LM) = V(M)", 20.0)
def test_criterion_07_block_replacement():
    rng = random.Random(0x5EED0007)
    interior_zero_cases = 0
    for seed in range(300):
        cfg = GenConfig(
            counts={"lambda1": (0, 2), "lambda2": (1, 2), "lambda3": (0, 1)},
            max_mult=2,
            max_degree=10,
            seed=seed,
            imag_axis_prob=0.6,
        )
        L, _, q = build_L_and_q(partition_roots(random_rootspec(cfg)))
        q += rng.randint(0, 2)
        N = [Fraction(1)]
        for _ in range(rng.randint(1, 4)):
            a = Fraction(rng.randint(1, 50), rng.randint(1, 10))
            N = naive_multiply(N, [-(a**q), Fraction(1)])
        M = _sparse(N, q)
        report = check_lemma3(L, M, q)
        assert report.passed, (seed, report.witnesses)
        assert sign_variations(L * M) == sign_variations(M)
        if any(c == 0 for c in L.coeffs[1:-1]):
            interior_zero_cases += 1
    assert interior_zero_cases >= 50, interior_zero_cases
    return f"300 triples, {interior_zero_cases} with interior zeros in L"


@criterion(8, "worked example matches the committed hand expansion", 5.0)
def test_criterion_08_worked_example():
    golden = json.loads(GOLDEN.read_text())
    code, cert = _cli_json("certify-variations", "--poly", golden["F"])
    assert code == 0
    for key in ("q", "p", "L", "M", "K", "FK", "V_FK", "nu_FK"):
        assert cert[key] == golden[key], (key, cert[key], golden[key])
    return f"q = {cert['q']}, K = {cert['K']}, FK = {cert['FK']}, V = {cert['V_FK']}"


@criterion(9, "round-trip root recovery", 60.0)
def test_criterion_09_round_trip():
    tol = 1e-10
    for seed in range(100):
        cfg = GenConfig(
            counts={c: (0, 2) for c in CLASSES},
            max_degree=10,
            max_mult=3,
            seed=seed,
            min_separation=Fraction(1, 4),
            imag_axis_prob=0.3,
            max_attempts=1000,
        )
        spec = random_rootspec(cfg)
        if not spec.roots:
            continue
        found = find_roots(Polynomial(naive_expand(spec)), precision=256)
        assert len(found.roots) == len(spec.roots), seed
        for r in spec.roots:
            target = complex(float(r.re), math.sqrt(float(r.im_sq)))
            near = [
                s for s in found.roots
                if abs(complex(float(s.re), math.sqrt(float(s.im_sq))) - target) < tol
            ]
            assert len(near) == 1 and near[0].mult == r.mult, (seed, r, found.roots)
    return "100 specs, all roots within 1e-10 and multiplicities exact"


@criterion(10, "degree growth for phi = pi/2^k", 30.0)
def test_criterion_10_degree_growth():
    degrees = []
    for k in range(2, 9):
        phi = B.pi(256) / 2**k
        tan = B.sin(phi) / B.cos(phi)
        root = Root(Fraction(1), tan * tan)
        angle = trig_angle(root)
        assert angle.n == math.ceil(2**k) - 1, (k, angle.n)
        cert = certify_positive(partition_roots(RootSpec((root,))))
        assert verify_certificate(cert.F, cert).passed, k
        degrees.append(cert.G.degree)
    assert all(a < b for a, b in zip(degrees, degrees[1:])), degrees
    return f"n = 2^k - 1 for k = 2..8, deg G = {degrees}"


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(RESULTS))
