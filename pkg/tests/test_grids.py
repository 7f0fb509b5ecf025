"""Grids, dimensions, and the constant pack."""

import math

import numpy as np
import pytest

from logconc.numerics import (
    LogGrid,
    RadialGrid,
    as_dimension,
    constants,
    make_log_grid,
    make_radial_grid,
    sphere_measure,
)


def test_uniform_trapezoid_small():
    g = make_log_grid(0, 10, 11)
    assert np.allclose(g.nodes, np.arange(11.0))
    assert np.allclose(g.weights[1:-1], 1.0)
    assert g.weights[0] == 0.5 and g.weights[-1] == 0.5


def test_two_point_grid():
    g = make_log_grid(0, 1, 2)
    assert np.allclose(g.nodes, [0.0, 1.0])
    assert np.allclose(g.weights, [0.5, 0.5])


def test_weights_sum_to_span():
    rng = np.random.default_rng(42)
    for _ in range(25):
        a = rng.uniform(-50, 50)
        b = a + rng.uniform(0.1, 400)
        m = int(rng.integers(2, 3000))
        g = make_log_grid(a, b, m)
        assert abs(g.weights.sum() - (b - a)) <= 1e-12 * max(1.0, abs(b - a))


def test_grid_rejections():
    with pytest.raises(ValueError):
        make_log_grid(0, 1, 1)
    with pytest.raises(ValueError):
        make_log_grid(1, 1, 8)
    with pytest.raises(ValueError):
        make_log_grid(2, 1, 8)
    with pytest.raises(TypeError):
        make_log_grid(0, 1, 7.5)


def test_grid_integrate_matches_trapezoid():
    g = make_log_grid(-2, 3, 301)
    vals = np.sin(g.nodes)
    assert abs(g.integrate(vals) - np.trapezoid(vals, g.nodes)) < 1e-13


def test_log_grid_csv_round_trip(tmp_path):
    g = make_log_grid(-4, 9, 57)
    path = tmp_path / "grid.csv"
    g.to_csv(path)
    g2 = LogGrid.from_csv(path)
    assert np.allclose(g2.nodes, g.nodes, rtol=0, atol=1e-15)
    assert np.allclose(g2.weights, g.weights, rtol=0, atol=1e-15)


def test_radial_grid_geometric():
    rg = make_radial_grid(1e-3, 10.0, 400, 1)
    ratios = rg.radii[1:] / rg.radii[:-1]
    assert np.max(np.abs(ratios - ratios[0])) < 1e-9
    # integral of r^{-1} against r dr over [a, b] is b - a
    vals = 1.0 / rg.radii
    assert abs(rg.integrate(vals) - (10.0 - 1e-3)) < 1e-3


def test_radial_grid_csv_round_trip(tmp_path):
    rg = make_radial_grid(0.1, 5.0, 33, 2)
    path = tmp_path / "rg.csv"
    rg.to_csv(path)
    rg2 = RadialGrid.from_csv(path)
    assert np.allclose(rg2.radii, rg.radii)


def test_dimension_validation():
    assert as_dimension(3).ambient == 6
    with pytest.raises(ValueError):
        as_dimension(0)
    with pytest.raises(TypeError):
        as_dimension(1.5)


# -- constants ---------------------------------------------------------------


def test_sphere_measures():
    assert abs(sphere_measure(1) - 2 * math.pi) < 1e-15
    assert abs(sphere_measure(2) - 2 * math.pi**2) < 1e-14
    assert abs(sphere_measure(3) - math.pi**3) < 1e-14


def test_sharp_exponent_two_dim():
    assert abs(constants(1).beta - 4 * math.pi) < 1e-14


def test_synthesis_constants_two_dim():
    c = constants(1)
    assert abs(c.c_synth - 1.0 / (2 * math.pi * math.sqrt(2 * math.pi))) < 1e-16
    assert abs(c.c_moser - 1.0 / math.sqrt(2 * math.pi)) < 1e-16


def test_constant_product_identity():
    for n in range(1, 6):
        c = constants(n)
        target = (2 * math.pi) ** (-2 * n)
        assert abs(c.c_synth * c.c_moser - target) <= 1e-15 * target


def test_constants_formulas_all_supported():
    for n in range(1, 6):
        c = constants(n)
        omega = 2 * math.pi**n / math.factorial(n - 1)
        assert abs(c.omega - omega) <= 1e-14 * omega
        beta = 2 * n * math.pi ** (2 * n) * 4.0**n / omega
        assert abs(c.beta - beta) <= 1e-14 * beta
