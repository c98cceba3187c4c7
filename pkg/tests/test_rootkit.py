"""Root specifications, partitioning, expansion and numeric root recovery."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from signcert.ball import Ball
from signcert.errors import ClassificationError, DomainError
from signcert.oracle import GenConfig, naive_expand, random_rootspec
from signcert.polyarith import Polynomial, parse_polynomial
from signcert.rootkit import (
    Root,
    RootSpec,
    count_positive_roots,
    expand_from_partition,
    find_roots,
    partition_roots,
    squarefree_decomposition,
)

I = Root(Fraction(0), Fraction(1))


def R(x, mult=1):
    return Root(Fraction(x), Fraction(0), mult)


def test_partition_examples():
    part = partition_roots(RootSpec((R(1), I)))
    assert part.lambda4 == (R(1),) and part.lambda2 == (I,)
    assert not part.lambda1 and not part.lambda3
    assert partition_roots(RootSpec((R(-2), R(-1)))).lambda1 == (R(-2), R(-1))
    one_plus_i = Root(Fraction(1), Fraction(1))
    assert partition_roots(RootSpec((one_plus_i,))).lambda3 == (one_plus_i,)


def test_root_at_origin_rejected():
    with pytest.raises(DomainError):
        partition_roots(RootSpec((R(0),)))


def test_ambiguous_ball_real_part_is_a_classification_error():
    fuzzy = Ball.exact(Fraction(1, 3), 64) - Fraction(1, 3)
    with pytest.raises(ClassificationError):
        partition_roots(RootSpec((Root(fuzzy, Fraction(1)),)))


def test_expand_examples():
    f = expand_from_partition(partition_roots(RootSpec((I, R(1)))))
    assert f.F2 == Polynomial([1, 0, 1])
    assert f.F4 == Polynomial([-1, 1])
    assert f.F == Polynomial([-1, 1, -1, 1])
    assert expand_from_partition(partition_roots(RootSpec((R(-1, 2),)))).F1 == Polynomial([1, 2, 1])
    empty = expand_from_partition(partition_roots(RootSpec(())))
    assert all(p == Polynomial([1]) for p in empty)


def test_count_positive_roots():
    assert count_positive_roots(partition_roots(RootSpec((R(1),)))) == 1
    assert count_positive_roots(partition_roots(RootSpec((R(1, 2), R(3))))) == 3
    assert count_positive_roots(partition_roots(RootSpec((R(-1),)))) == 0


def test_declared_degree_checked():
    with pytest.raises(DomainError):
        RootSpec((I,), declared_degree=1)


def test_find_roots_examples():
    spec = find_roots(parse_polynomial("2,-3,1"))
    assert set(spec.roots) == {R(1), R(2)} and not spec.approximate
    assert find_roots(parse_polynomial("1,0,1")).roots == (I,)
    double = find_roots(parse_polynomial("1,-2,1"), cluster_radius=Fraction(1, 10**8))
    assert double.roots == (R(1, 2),)
    pair = find_roots(parse_polynomial("5,-3,1")).roots
    assert pair == (Root(Fraction(3, 2), Fraction(11, 4)),)


def test_irrational_roots_come_back_as_balls():
    spec = find_roots(parse_polynomial("-2,0,1"))
    assert spec.approximate
    for r in spec.roots:
        assert isinstance(r.re, Ball)
        assert (r.re * r.re - 2).contains_zero()


def test_squarefree_decomposition():
    p = Polynomial([-1, 1]) ** 3 * Polynomial([2, 1])
    parts = {m: f for f, m in squarefree_decomposition(p)}
    assert parts[3] == Polynomial([-1, 1]) and parts[1] == Polynomial([2, 1])


@given(st.integers(0, 2**32))
def test_round_trip_recovers_rational_specs(seed):
    cfg = GenConfig(
        counts={"lambda1": (0, 2), "lambda2": (0, 1), "lambda3": (0, 1), "lambda4": (0, 2)},
        max_degree=8,
        max_mult=2,
        seed=seed,
        min_separation=Fraction(1, 2),
    )
    spec = random_rootspec(cfg)
    if not spec.roots:
        return
    found = find_roots(Polynomial(naive_expand(spec)))
    assert not found.approximate
    assert sorted(found.roots, key=Root.sort_key) == sorted(spec.roots, key=Root.sort_key)
