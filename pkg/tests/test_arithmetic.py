from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bridgeflow.arithmetic import (
    Decomposition,
    DomainError,
    Ordering,
    Pair,
    Region,
    classify_region,
    decompose,
    lambda_cmp,
    reconstruct,
    z_seq,
)


@pytest.mark.parametrize("w,p,expected", [(2, 7, 7), (3, 4, 21), (5, 3, 24), (4, 0, 0), (4, 1, 1)])
def test_z_seq_examples(w, p, expected):
    assert z_seq(w, p) == expected


def test_z_seq_rejects_small_w():
    with pytest.raises(DomainError):
        z_seq(1, 3)


@pytest.mark.parametrize("a,b,w,expected", [(3, 5, 2, Ordering.ABOVE), (2, 5, 3, Ordering.BELOW), (1, 1, 2, Ordering.EQUAL)])
def test_lambda_cmp_examples(a, b, w, expected):
    assert lambda_cmp(a, b, w) is expected


@pytest.mark.parametrize("a,b,w,expected", [(2, 5, 3, Region.W), (1, 1, 3, Region.U), (3, 5, 2, Region.X)])
def test_classify_examples(a, b, w, expected):
    assert classify_region(a, b, w) is expected


def test_classify_rejects_decreasing_pair():
    with pytest.raises(DomainError):
        classify_region(5, 3, 3)


@pytest.mark.parametrize(
    "a,b,w,expected",
    [(3, 5, 2, Decomposition(1, 1, 1)), (3, 8, 3, Decomposition(1, 0, 1)), (1, 2, 2, Decomposition(0, 0, 1))],
)
def test_decompose_examples(a, b, w, expected):
    assert decompose(a, b, w) == expected
    assert reconstruct(expected, w) == (a, b)


@pytest.mark.parametrize("a,b,w", [(2, 5, 3), (1, 3, 2), (2, 2, 2)])
def test_decompose_rejects_outside_domain(a, b, w):
    with pytest.raises(DomainError):
        decompose(a, b, w)


def test_pair_validation():
    with pytest.raises(DomainError):
        Pair(0, 1)
    assert tuple(Pair(2, 3)) == (2, 3)


def test_determinant_identity():
    # z_p^2 - z_{p-1} z_{p+1} = 1
    for w in range(2, 11):
        for p in range(1, 31):
            assert z_seq(w, p) ** 2 - z_seq(w, p - 1) * z_seq(w, p + 1) == 1


def _region_by_floats(a, b, w):
    # independent reference with exact rationals: compare b/a against the roots
    import sympy

    lam = lambda k: (k + sympy.sqrt(k * k - 4)) / 2  # noqa: E731
    r = sympy.Rational(b, a)
    if r >= w:
        return Region.Y
    if r > lam(w):
        return Region.X
    if r >= w - 1:
        return Region.W
    if w >= 3 and r > lam(w - 1):
        return Region.V
    return Region.U


def test_region_partition_exhaustive():
    for w in range(2, 7):
        for a in range(1, 101):
            for b in range(a, 101):
                r = classify_region(a, b, w)
                if w == 2:
                    assert r in (Region.W, Region.X, Region.Y)
                    assert (r is Region.W) == (a == b)


def test_region_matches_symbolic_reference():
    for w in range(2, 6):
        for a in range(1, 16):
            for b in range(a, 40):
                assert classify_region(a, b, w) is _region_by_floats(a, b, w), (a, b, w)


def test_decomposition_unique_by_brute_force():
    # every (p, alpha >= 0, beta >= 1) solving the two equations
    for w in (2, 3, 4):
        for a in range(1, 51):
            for b in range(a, w * a + 1):
                if classify_region(a, b, w) is not Region.X and b != w * a:
                    continue
                found = []
                for p in range(0, a + 2):
                    z0, z1, z2 = z_seq(w, p), z_seq(w, p + 1), z_seq(w, p + 2)
                    # the 2x2 system has determinant -1, so it has one integer solution
                    al, be = z1 * b - z2 * a, z1 * a - z0 * b
                    assert z0 * al + z1 * be == a and z1 * al + z2 * be == b
                    if al >= 0 and be >= 1:
                        found.append((p, al, be))
                dec = decompose(a, b, w)
                assert found == [(dec.p, dec.alpha, dec.beta)], (a, b, w, found)


@given(st.integers(2, 8), st.integers(1, 200), st.integers(0, 2000))
def test_c_sequence_decreasing(w, a, extra):
    b = a + extra % (w * a)
    if b > w * a or classify_region(a, b, w) is not Region.X and b != w * a:
        return
    dec = decompose(a, b, w)
    x, y = reconstruct(dec, w)
    assert (x, y) == (a, b)
    assert dec.beta >= 1 and dec.alpha >= 0
    assert (dec.p == 0) == (b == w * a)


@given(st.integers(2, 12), st.integers(1, 10**6), st.integers(1, 10**6))
def test_lambda_cmp_antisymmetry(w, a, b):
    a, b = min(a, b), max(a, b)
    o = lambda_cmp(a, b, w)
    s = b * b - w * a * b + a * a
    assert o is (Ordering.ABOVE if s > 0 else Ordering.EQUAL if s == 0 else Ordering.BELOW)
