"""Oscillatory quadrature engine against brute-force and closed forms."""

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import j0, j1, struve

from logconc.errors import NonConvergenceError
from logconc.numerics.quadrature import (
    bessel_log_integral,
    euler_transform,
    gauss_rule,
    integrate_panels,
)


def cumulative_j0(x: float) -> float:
    """int_0^x J0(u) du in closed form (Struve identity)."""
    return x * j0(x) + 0.5 * math.pi * x * (j1(x) * struve(0, x) - j0(x) * struve(1, x))


def test_gauss_rule_cached_and_exact():
    x, w = gauss_rule(6)
    assert x.shape == (6,)
    # degree-11 polynomial integrated exactly on [-1, 1]
    assert abs(np.sum(w * x**10) - 2.0 / 11.0) < 1e-14


def test_integrate_panels_smooth():
    breaks = np.linspace(0.0, math.pi, 9)
    val = integrate_panels(np.sin, breaks)
    assert abs(val.real - 2.0) < 1e-13


def test_euler_transform_alternating():
    terms = np.array([(-1.0) ** k / (k + 1) for k in range(48)])
    est, err = euler_transform(terms)
    assert abs(est - math.log(2.0)) < 1e-13
    assert err < 1e-10


def test_empty_window_is_zero():
    res = bessel_log_integral(lambda t: np.ones_like(t), 1.0, 1.0, 0, 0.0)
    assert res.value == 0.0


def test_direct_zero_aligned_path():
    # int_a^b J0(u) du recast in t = log u
    res = bessel_log_integral(lambda t: np.exp(t), math.log(0.5), math.log(40.0), 0, 0.0)
    want = quad(lambda u: j0(u), 0.5, 40.0, limit=300)[0]
    assert abs(res.value.real - want) < 1e-12


def test_quiet_head_path():
    # whole window below the oscillatory switch: int_0^1 J1(u) du
    res = bessel_log_integral(lambda t: np.exp(t), -30.0, 0.0, 1, 0.0)
    want = quad(lambda u: j1(u), 0, 1)[0]
    assert abs(res.value.real - want) < 1e-12


def test_euler_difference_of_tails():
    # finite upper limit far beyond the direct interval budget
    upper = 11.0  # u_hi = e^11 ~ 6.0e4 oscillations
    res = bessel_log_integral(lambda t: np.exp(t), math.log(0.5), upper, 0, 0.0)
    want = cumulative_j0(math.exp(upper)) - cumulative_j0(0.5)
    assert abs(res.value.real - want) < 1e-9


def test_full_line_tail():
    # int_0^inf J0 = 1, window wide enough that both ends are negligible
    res = bessel_log_integral(lambda t: np.exp(t), math.log(1e-9), 800.0, 0, 0.0)
    assert abs(res.value.real - 1.0) < 1e-8
    # int_0^inf J1 = 1 as well
    res1 = bessel_log_integral(lambda t: np.exp(t), math.log(1e-9), 800.0, 1, 0.0)
    assert abs(res1.value.real - 1.0) < 1e-8


def test_tau_shift_consistency():
    # shifting tau rescales u: int a(t) J0(e^{t-tau}) dt = int a(s+tau) J0(e^s) ds
    def amp(t):
        return np.exp(-0.5 * (np.asarray(t) - 1.0) ** 2)

    res_a = bessel_log_integral(amp, -2.0, 4.0, 0, 1.5)
    res_b = bessel_log_integral(lambda s: amp(np.asarray(s) + 1.5), -3.5, 2.5, 0, 0.0)
    assert abs(res_a.value - res_b.value) < 1e-12


def test_refinement_stability():
    def amp(t):
        return np.exp(t) * np.cos(0.3 * np.asarray(t))

    coarse = bessel_log_integral(amp, math.log(0.5), math.log(500.0), 1, 0.0)
    fine = bessel_log_integral(amp, math.log(0.5), math.log(500.0), 1, 0.0,
                               gl_order=16, head_dt=0.125)
    assert abs(coarse.value - fine.value) < 1e-10 * max(1.0, abs(fine.value))


def test_non_extendable_raises():
    with pytest.raises(NonConvergenceError):
        bessel_log_integral(lambda t: np.exp(t), 0.0, 50.0, 0, 0.0, extendable=False)


def test_complex_amplitude():
    res = bessel_log_integral(lambda t: (1 + 2j) * np.exp(t), math.log(0.5),
                              math.log(40.0), 0, 0.0)
    want = (1 + 2j) * quad(lambda u: j0(u), 0.5, 40.0, limit=300)[0]
    assert abs(res.value - want) < 1e-11
