"""Bessel evaluation against an in-test ascending-series oracle."""

import numpy as np
import pytest

from logconc.numerics import bessel_j, bessel_j_prime


def series_j(order: int, x: float, terms: int = 60) -> float:
    """Ascending series for J_order(x); independent of scipy.

    Good to ~1e-12 absolute for x <= 12 (alternating-series cancellation eats
    about eight digits at the top of that range).
    """
    half = 0.5 * x
    term = half**order / np.prod(np.arange(1, order + 1, dtype=float)) if order else 1.0
    total = term
    for k in range(1, terms):
        term *= -(half * half) / (k * (k + order))
        total += term
    return float(total)


def test_values_at_zero():
    assert bessel_j(0, 0.0) == 1.0
    for order in range(1, 8):
        assert bessel_j(order, 0.0) == 0.0


def test_first_zero_of_j0():
    # first positive root, located independently by bisecting the series
    lo, hi = 2.0, 3.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if series_j(0, mid) > 0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    assert abs(root - 2.404825557695773) < 1e-12
    assert abs(bessel_j(0, 2.404825557695773)) < 1e-8


def test_matches_series_oracle_small_arguments():
    xs = np.linspace(0.0, 12.0, 241)
    for order in range(8):
        got = bessel_j(order, xs)
        want = np.array([series_j(order, float(x)) for x in xs])
        assert np.max(np.abs(got - want)) < 1e-11


def test_recurrence_consistency_large_arguments():
    # J_{m-1}(x) + J_{m+1}(x) = (2m/x) J_m(x), a cross-order identity the
    # implementation does not use internally
    for x in (50.0, 400.0, 1e4, 1e6):
        for order in range(1, 7):
            lhs = bessel_j(order - 1, x) + bessel_j(order + 1, x)
            rhs = 2 * order / x * bessel_j(order, x)
            assert abs(lhs - rhs) < 1e-8


def test_vectorized_and_scalar_agree():
    xs = np.array([0.0, 0.5, 2.0, 77.0])
    vec = bessel_j(3, xs)
    assert vec.shape == xs.shape
    for i, x in enumerate(xs):
        assert vec[i] == bessel_j(3, float(x))


def test_rejects_bad_order_and_negative_argument():
    with pytest.raises(ValueError):
        bessel_j(8, 1.0)
    with pytest.raises(ValueError):
        bessel_j(-1, 1.0)
    with pytest.raises(TypeError):
        bessel_j(1.5, 1.0)
    with pytest.raises(ValueError):
        bessel_j(0, -0.1)


def test_derivative_identities():
    xs = np.linspace(0.1, 30.0, 57)
    # J0' = -J1 ; 2 Jm' = J_{m-1} - J_{m+1}
    assert np.max(np.abs(bessel_j_prime(0, xs) + bessel_j(1, xs))) < 1e-12
    for order in range(1, 7):
        lhs = 2 * bessel_j_prime(order, xs)
        rhs = bessel_j(order - 1, xs) - bessel_j(order + 1, xs)
        assert np.max(np.abs(lhs - rhs)) < 1e-12
