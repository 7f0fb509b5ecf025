"""Piecewise amplitudes and symbolic spectra: exact algebra, brute-force pairings."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from logconc.fields import AngularProfile, PiecewiseAmp, Term
from logconc.numerics import make_log_grid, radial_synthesis, sphere_measure


def cubic_amp():
    return PiecewiseAmp.from_samples([0.0, 1.0, 2.5, 4.0], [1.0, 0.3, -0.2, 0.0])


# -- PiecewiseAmp -------------------------------------------------------------


def test_from_samples_interpolates():
    amp = cubic_amp()
    assert abs(amp(np.array([0.5]))[0] - 0.65) < 1e-15
    assert amp(np.array([-1.0]))[0] == 0.0
    assert amp(np.array([9.0]))[0] == 0.0


def test_integrate_matches_quad():
    amp = cubic_amp()
    want = quad(lambda t: amp(np.array([t]))[0].real, 0.0, 4.0, limit=200)[0]
    assert abs(amp.integrate().real - want) < 1e-10


def test_product_exact():
    a = cubic_amp()
    w = PiecewiseAmp.fit_smooth(lambda t: np.cos(0.3 * np.asarray(t)), -1.0, 5.0, 24)
    prod = a.product(w)
    ts = np.linspace(-0.5, 4.5, 301)
    assert np.max(np.abs(prod(ts) - a(ts) * w(ts))) < 1e-9


def test_restrict_and_support():
    amp = cubic_amp().restrict(0.5, 3.0)
    assert amp.support == (0.5, 3.0)
    ts = np.linspace(0.6, 2.9, 40)
    assert np.max(np.abs(amp(ts) - cubic_amp()(ts))) < 1e-14


def test_compose_affine_round_trip():
    amp = cubic_amp()
    alpha = 37.0
    stretched = amp.compose_affine(0.0, 1.0 / alpha)  # s -> amp(s / alpha)
    back = stretched.compose_affine(0.0, alpha)
    ts = np.linspace(-1.0, 5.0, 200)
    assert np.max(np.abs(back(ts) - amp(ts))) < 1e-12
    # orientation flip
    flipped = amp.compose_affine(4.0, -1.0)
    assert np.max(np.abs(flipped(4.0 - ts) - amp(ts))) < 1e-12


def test_antiderivative_is_cumulative():
    amp = cubic_amp()
    anti = amp.antiderivative()
    for s in (0.7, 1.9, 3.5, 4.0):
        want = amp.integrate(0.0, s)
        assert abs(anti(np.array([s]))[0] - want) < 1e-13


def test_inner_matches_brute_force():
    a = cubic_amp()
    b = a.product(a)
    want = quad(lambda t: (a(np.array([t]))[0] * b(np.array([t]))[0]).real, 0, 4,
                limit=200)[0]
    assert abs(a.inner(b).real - want) < 1e-9


def test_degree_cap_enforced():
    a = cubic_amp()
    deg6 = a.product(a)  # 1 + 1 -> fine; build degree 6 via chained products
    deg6 = deg6.product(deg6)  # 2 + 2 = 4
    with pytest.raises(ValueError):
        deg6.product(deg6)  # 8 > 6


def test_dict_round_trip():
    amp = cubic_amp().scaled(1.0 + 2.0j)
    back = PiecewiseAmp.from_dict(amp.to_dict())
    ts = np.linspace(0, 4, 50)
    assert np.max(np.abs(back(ts) - amp(ts))) == 0.0


# -- AngularProfile -----------------------------------------------------------


def brute_pair(t1: Term, t2: Term, t_lo: float, t_hi: float, n_theta: int = 2048):
    """Direct 2-d quadrature of <w1, w2> over [t_lo, t_hi] x circle."""
    theta = np.linspace(0.0, 2 * math.pi, n_theta, endpoint=False)
    unit = np.stack([np.cos(theta), np.sin(theta)], axis=1)

    def integrand(t):
        e_t = math.exp(t)
        d1 = t1.offset or (0.0, 0.0)
        d2 = t2.offset or (0.0, 0.0)
        ph1 = np.exp(-1j * e_t * (unit @ d1) + 1j * t1.mode * theta)
        ph2 = np.exp(-1j * e_t * (unit @ d2) + 1j * t2.mode * theta)
        a1 = t1.amp(np.array([t]))[0]
        a2 = t2.amp(np.array([t]))[0]
        return float(np.real(a1 * np.conj(a2) * np.mean(ph1 * np.conj(ph2)))) * 2 * math.pi

    return quad(integrand, t_lo, t_hi, limit=400)[0]


def test_radial_l2():
    amp = cubic_amp()
    prof = AngularProfile.radial(1, amp)
    want = 2 * math.pi * amp.l2_sq()
    assert abs(prof.l2_sq() - want) < 1e-12 * want


def test_radial_terms_higher_dim():
    amp = cubic_amp()
    prof = AngularProfile.radial(3, amp)
    want = sphere_measure(3) * amp.l2_sq()
    assert abs(prof.l2_sq() - want) < 1e-12 * want
    with pytest.raises(ValueError):
        AngularProfile(2, [Term(amp, (1.0, 0.0), 0)])


def test_offset_pair_against_brute_force():
    a = cubic_amp()
    t1 = Term(a, (0.4, -0.3), 0)
    t2 = Term(a, (-0.2, 0.1), 1)
    prof = AngularProfile(1, [t1, t2])
    p11 = prof._pair(t1, t1, None, None)
    p12 = prof._pair(t1, t2, None, None)
    b11 = brute_pair(t1, t1, 0.0, 4.0)
    b12 = brute_pair(t1, t2, 0.0, 4.0)
    assert abs(p11.real - b11) < 1e-7 * abs(b11)
    assert abs(p12.real - b12) < 1e-7 * max(1e-3, abs(b12))
    # full quadratic form agrees too
    want = b11 + brute_pair(t2, t2, 0.0, 4.0) + 2 * b12
    assert abs(prof.l2_sq() - want) < 1e-6 * want


def test_mode_orthogonality_same_ray():
    a = cubic_amp()
    prof = AngularProfile(1, [Term(a, None, 0), Term(a, None, 2)])
    # distinct angular modes at the same offset are exactly orthogonal
    assert abs(prof.l2_sq() - 2 * 2 * math.pi * a.l2_sq()) < 1e-12


def test_demodulation_removes_offset():
    a = cubic_amp()
    prof = AngularProfile(1, [Term(a, (3.0, 4.0), 1)])
    demod = prof.demodulated((3.0, 4.0))
    assert demod.terms[0].offset is None
    # demodulation is exact, not approximate: norms unchanged
    assert abs(demod.l2_sq() - prof.l2_sq()) < 1e-9 * prof.l2_sq()


def test_sphere_average_against_brute_force():
    a = cubic_amp()
    prof = AngularProfile(1, [Term(a, (0.7, 0.2), 0), Term(a, None, 3)])
    ts = np.array([0.3, 1.1, 2.2])
    got = prof.sphere_average(ts)
    theta = np.linspace(0, 2 * math.pi, 4096, endpoint=False)
    for i, t in enumerate(ts):
        e_t = math.exp(t)
        w = a(np.array([t]))[0] * np.exp(
            -1j * e_t * (0.7 * np.cos(theta) + 0.2 * np.sin(theta))
        ) + a(np.array([t]))[0] * np.exp(3j * theta)
        assert abs(got[i] - np.mean(w)) < 1e-9


def test_field_matches_radial_synthesis_route():
    # two independent routes to the same physical field: the piecewise kernel
    # driver versus per-radius sampled synthesis of |xi|^{-2N} amp
    amp = cubic_amp()
    prof = AngularProfile.radial(1, amp)
    radii = np.geomspace(0.05, 3.0, 17)
    got = prof.field(radii)
    grid = make_log_grid(-0.5, 4.5, 4097)

    def spectral(t):
        return amp(t) * np.exp(-2.0 * np.asarray(t))

    want = radial_synthesis(1, grid, spectral, radii,
                            seams=(0.0, 1.0, 2.5, 4.0)).values / (2 * math.pi) ** 2
    assert np.max(np.abs(got.real - want)) < 2e-6 * np.max(np.abs(want))
    assert np.max(np.abs(got.imag)) < 1e-9 * np.max(np.abs(want))


def test_offset_field_is_translation():
    amp = cubic_amp()
    base = AngularProfile.radial(1, amp)
    moved = AngularProfile(1, [Term(amp, (0.3, -0.8), 0)])
    pts = np.array([0.31 - 0.79j, 0.9 + 0.1j, -0.5 - 0.5j])
    got = moved.field(pts)
    want = base.field(pts - (0.3 - 0.8j))
    assert np.max(np.abs(got - want)) < 1e-8 * np.max(np.abs(want))


def test_profile_dict_round_trip():
    a = cubic_amp()
    prof = AngularProfile(1, [Term(a, (1.0, 2.0), -1), Term(a, None, 0)])
    back = AngularProfile.from_dict(prof.to_dict())
    assert back.half_dim == 1
    assert back.terms[0].offset == (1.0, 2.0)
    assert back.terms[0].mode == -1
