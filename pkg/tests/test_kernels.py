"""Tabulated exponential-Bessel kernels against the direct engine."""

import numpy as np
import pytest

from logconc.numerics.kernels import get_kernel_family, piecewise_transform
from logconc.numerics.quadrature import bessel_log_integral

PIECES = [
    (2.0, 9.0, (0.3 + 0.0j, -0.11, 0.021, 0.004)),
    (-1.0, 1.5, (1.0 + 0.0j, 0.2)),
]


def eval_pieces(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape, dtype=complex)
    for lo, hi, coeffs in PIECES:
        m = (t >= lo) & (t <= hi)
        x = t[m] - lo
        acc = np.zeros(x.shape, dtype=complex)
        for c in reversed(coeffs):
            acc = acc * x + c
        out[m] = acc
    return out


def reference(mu, beta, tau):
    total = 0.0 + 0.0j
    for lo, hi, coeffs in PIECES:
        def amp(t, lo=lo, coeffs=coeffs):
            x = np.asarray(t) - lo
            acc = np.zeros(np.shape(x), dtype=complex)
            for c in reversed(coeffs):
                acc = acc * x + c
            return acc * np.exp(beta * (np.asarray(t) - tau))

        total += bessel_log_integral(amp, lo, hi, mu, tau,
                                     gl_order=14, head_dt=0.125).value
    return total


@pytest.mark.parametrize("mu,beta", [(0, 0), (1, 0), (2, 0), (3, 0), (1, -1), (2, -2)])
def test_matches_direct_engine(mu, beta):
    taus = np.array([-3.0, -0.5, 0.0, 1.7, 2.5, 5.0, 8.0, 12.0, 20.0, 45.0])
    got = piecewise_transform(PIECES, mu, beta, taus)
    want = np.array([reference(mu, beta, tau) for tau in taus])
    scale = np.max(np.abs(want))
    assert np.max(np.abs(got - want)) < 2e-7 * scale


def test_single_constant_piece_moments():
    # with amp == 1 the transform is the kernel moment itself
    fam = get_kernel_family(1, -1)
    taus = np.array([0.0])
    got = piecewise_transform([(3.0, 6.0, (1.0 + 0.0j,))], 1, -1, taus)[0]
    want = fam.integral(0, 3.0, 6.0)
    assert abs(got - want) < 1e-12 * max(1.0, abs(want))


def test_kernel_integral_against_brute_force():
    # moderate windows where ordinary quadrature is trustworthy
    from scipy.integrate import quad
    from scipy.special import jv

    for mu, beta in [(0, 0), (1, -1), (2, -2)]:
        fam = get_kernel_family(mu, beta)
        for a, b in [(-2.0, 1.0), (0.5, 3.0), (1.0, 5.5)]:
            for q in (0, 1, 3):
                want = quad(
                    lambda s: s**q * np.exp(beta * s) * jv(mu, np.exp(s)),
                    a, b, limit=400,
                )[0]
                got = fam.integral(q, a, b)
                assert abs(got - want) < 5e-8 * max(1.0, abs(want)), (mu, beta, q, a, b)


def test_deep_quiet_zone_is_stable():
    # far below the oscillatory range the integrand tends to the plateau
    # e^{(beta+mu) s} * 2^{-mu}/mu!; the naive product e^{beta s} * J(e^s)
    # would be inf * 0 there.  With beta = -mu that plateau is constant 1/2,
    # so a width-20 window integrates to 10.
    got = piecewise_transform([(-900.0, -880.0, (1.0 + 0.0j,))], 1, -1, np.array([0.0]))[0]
    assert abs(got.real - 10.0) < 1e-12
    # with beta = 0 the integrand decays like e^s and underflows honestly
    flat = piecewise_transform([(-900.0, -880.0, (1.0 + 0.0j,))], 1, 0, np.array([0.0]))[0]
    assert np.isfinite(flat.real)
    assert abs(flat.real) < 1e-300


def test_linearity_in_amplitude():
    taus = np.array([0.0, 3.0, 10.0])
    one = piecewise_transform([(1.0, 4.0, (1.0 + 0.0j, 0.5))], 0, 0, taus)
    two = piecewise_transform([(1.0, 4.0, (2.0 + 0.0j, 1.0))], 0, 0, taus)
    assert np.max(np.abs(two - 2 * one)) < 1e-14 * np.max(np.abs(two))
