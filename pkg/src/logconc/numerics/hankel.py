"""Radial Fourier synthesis and analysis on log grids.

For a radial spectrum f(|xi|) in R^(2N) the plane-wave integral collapses to
a Hankel-type transform; in the log variable t = log(rho),

    F(r) = (2 pi)^N r^(1-N) * integral f(e^t) J_(N-1)(r e^t) e^((N+1) t) dt,

which is what :func:`radial_synthesis` evaluates, one radius at a time,
through the zero-aligned panel machinery in :mod:`.quadrature`.  The r = 0
limit and its neighborhood are handled by the ascending series of J_(N-1)
(three moments of f suffice below u = r * rho_max = 0.05), never by the
r^(1-N) prefactor.

:func:`radial_analysis` is the inverse map, normalized so that the round
trip is the identity: the same kernel against samples of the physical field,
with prefactor (2 pi)^(-N) rho^(1-N).  Fields carrying an exact piecewise
representation in sigma = log(r) keep their sub-sample plateau: the constant
head integrates in closed form through

    integral_0^R J_(N-1)(rho r) r^N dr = R^N J_N(rho R) / rho.

Scale caveat: this module works with *sampled* spectra and fields, and a
spectrum that decays like rho^(-2N) underflows float64 once log(rho) passes
a few hundred.  Deep-concentration synthesis (scale parameters in the
hundreds) must go through the exact term representation in
:mod:`logconc.fields`, which never forms the decayed product.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from ..errors import ConfigError, NonConvergenceError
from .bessel import bessel_j
from .grids import LogGrid, RadialGrid, as_dimension, sphere_measure
from .quadrature import bessel_log_integral, integrate_panels

__all__ = ["radial_synthesis", "radial_analysis"]

# hand-off from the ascending series to the oscillatory engine, in u = r*rho
_SMALL_U = 0.05
_MOMENT_DT = 0.25


def _spectral_callable(grid: LogGrid, spectral) -> "tuple[Callable, float, float, tuple]":
    """Normalize the spectral argument to (callable, t_lo, t_hi, seams).

    Arrays are read as samples on the grid and become the zero-extended
    linear interpolant; callables and piecewise amplitudes are used as-is
    (exact, up to quadrature).  Piece boundaries come back as seams so the
    quadrature can pin panel edges to them.
    """
    t_lo, t_hi = float(grid.nodes[0]), float(grid.nodes[-1])
    if hasattr(spectral, "raw_pieces"):
        edges = sorted({e for lo, hi, _ in spectral.raw_pieces() for e in (lo, hi)})
        return spectral, t_lo, t_hi, tuple(edges)
    if callable(spectral):
        return spectral, t_lo, t_hi, ()
    vals = np.asarray(spectral)
    if vals.shape != grid.nodes.shape:
        raise ConfigError(
            f"spectral samples have shape {vals.shape}, grid has {grid.nodes.shape}"
        )
    nodes = grid.nodes
    if np.iscomplexobj(vals):
        def interp(t):
            t = np.asarray(t, dtype=float)
            out = np.interp(t, nodes, vals.real) + 1j * np.interp(t, nodes, vals.imag)
            return np.where((t < t_lo) | (t > t_hi), 0.0j, out)
    else:
        def interp(t):
            t = np.asarray(t, dtype=float)
            return np.where((t < t_lo) | (t > t_hi), 0.0, np.interp(t, nodes, vals))
    return interp, t_lo, t_hi, ()


def _moment(fn: Callable, t_lo: float, t_hi: float, power: float,
            seams: "tuple" = ()) -> complex:
    """integral of fn(t) * exp(power * t) over [t_lo, t_hi]."""
    n = max(2, int(math.ceil((t_hi - t_lo) / _MOMENT_DT)) + 1)
    breaks = np.unique(np.concatenate(
        (np.linspace(t_lo, t_hi, n), [s for s in seams if t_lo < s < t_hi])
    ))
    return integrate_panels(lambda t: np.asarray(fn(t), dtype=complex) * np.exp(power * t),
                            breaks, order=12)


def radial_synthesis(
    half_dim,
    grid: LogGrid,
    spectral,
    radii,
    *,
    quad_tol: float = 1e-6,
    gl_order: int = 12,
    head_dt: float = 0.25,
    seams: "tuple | list" = (),
):
    """Physical radial field of a radial spectrum, F as in the module header.

    Parameters
    ----------
    half_dim : int
        N; the ambient dimension is 2N.
    grid : LogGrid
        Grid in t = log(rho) carrying the spectral window.
    spectral : ndarray | callable | PiecewiseAmp
        f(rho) as samples on ``grid`` (linearly interpolated) or as a
        vectorized callable of t (integrated exactly up to quadrature).
    radii : RadialGrid | ndarray
        Output radii; r = 0 is allowed and uses the series branch.
    quad_tol : float
        Declared tolerance; the run aborts with NonConvergenceError if the
        internal error estimate exceeds it relative to the output scale.
    seams : sequence of float
        Known kinks/jumps of a callable spectrum (piecewise amplitudes
        contribute their own piece edges automatically).

    Returns
    -------
    RadialField
        With ``quad_tol`` set to the worst achieved error estimate.
    """
    from ..fields import RadialField

    dim = as_dimension(half_dim)
    n = dim.half
    fn, t_lo, t_hi, auto_seams = _spectral_callable(grid, spectral)
    seams = tuple(sorted(set(auto_seams) | set(float(s) for s in seams)))
    if (n + 1) * max(abs(t_lo), abs(t_hi)) > 690.0:
        raise ConfigError(
            "sampled synthesis window is too deep for float64 weights; "
            "use the exact term representation instead"
        )
    r_arr = np.asarray(getattr(radii, "radii", radii), dtype=float)
    if np.any(r_arr < 0.0):
        raise ConfigError("radii must be nonnegative")

    def weighted(t):
        return np.asarray(fn(t), dtype=complex) * np.exp((n + 1.0) * np.asarray(t))

    two_pi_n = (2.0 * math.pi) ** n
    # ascending-series moments, built on first use
    moments: "list[complex] | None" = None
    out = np.empty(r_arr.shape, dtype=complex)
    worst_err = 0.0
    mu = n - 1
    for i, r in np.ndenumerate(r_arr):
        if r * math.exp(t_hi) <= _SMALL_U:
            if moments is None:
                moments = [_moment(fn, t_lo, t_hi, 2.0 * n + 2.0 * k, seams)
                           for k in (0, 1, 2)]
            acc = 0.0j
            for k, mom in enumerate(moments):
                acc += (
                    (-1.0) ** k
                    * r ** (2 * k)
                    * 2.0 ** (1.0 - n - 2.0 * k)
                    / (math.factorial(k) * math.factorial(n - 1 + k))
                    * mom
                )
            out[i] = two_pi_n * acc
            continue
        res = bessel_log_integral(
            weighted, t_lo, t_hi, mu, -math.log(r),
            gl_order=gl_order, head_dt=head_dt, seams=seams,
        )
        pref = two_pi_n * r ** (1.0 - n)
        out[i] = pref * res.value
        worst_err = max(worst_err, pref * res.err_est)

    scale = float(np.max(np.abs(out))) if out.size else 1.0
    achieved = worst_err / max(scale, 1e-300)
    if achieved > quad_tol:
        raise NonConvergenceError(
            "radial synthesis error estimate exceeds the requested tolerance",
            achieved=achieved,
            requested=quad_tol,
        )
    if out.size == 0 or np.max(np.abs(out.imag)) <= 1e-14 * max(scale, 1e-300):
        values = out.real
    else:
        values = out
    return RadialField(
        radii=r_arr, values=values, half_dim=n,
        quad_tol=max(achieved, 1e-15),
        meta={"kind": "radial-synthesis", "declared_tol": quad_tol},
    )


def radial_analysis(
    half_dim,
    field,
    grid: LogGrid,
    *,
    quad_tol: float = 1e-6,
    gl_order: int = 12,
    head_dt: float = 0.25,
) -> np.ndarray:
    """Radial spectrum of a physical field, sampled on ``grid``.

    Inverts :func:`radial_synthesis` (round trip = identity on band-limited
    inputs).  Fields with an exact log-form contribute their sub-support
    plateau in closed form; sampled fields are extended by a constant below
    the first radius and by zero above the last.
    """
    dim = as_dimension(half_dim)
    n = dim.half
    mu = n - 1
    rho = np.exp(grid.nodes)

    # amplitude in sigma = log r, plus (plateau value, plateau edge radius)
    if getattr(field, "log_pieces", None) is not None:
        amp_sig = field.log_pieces
        sig_lo, sig_hi = amp_sig.support
        plateau = complex(field.plateau)
        r_edge = math.exp(sig_lo)
        seams = tuple(sorted({e for lo, hi, _ in amp_sig.raw_pieces() for e in (lo, hi)}))
    else:
        radii = np.asarray(field.radii, dtype=float)
        vals = np.asarray(field.values)
        pos = radii > 0.0
        if not np.any(pos):
            raise ConfigError("field has no positive radii")
        sig_nodes = np.log(radii[pos])
        sig_vals = vals[pos]
        sig_lo, sig_hi = float(sig_nodes[0]), float(sig_nodes[-1])

        def amp_sig(s):
            s = np.asarray(s, dtype=float)
            out = np.interp(s, sig_nodes, sig_vals.real).astype(complex)
            if np.iscomplexobj(sig_vals):
                out = out + 1j * np.interp(s, sig_nodes, sig_vals.imag)
            return np.where((s < sig_lo) | (s > sig_hi), 0.0j, out)

        plateau = complex(vals[0])
        r_edge = float(radii[pos][0])
        seams = ()

    def weighted(s):
        return np.asarray(amp_sig(s), dtype=complex) * np.exp((n + 1.0) * np.asarray(s))

    inv_pref = (2.0 * math.pi) ** (-n)
    out = np.empty(rho.shape, dtype=complex)
    worst_err = 0.0
    for i, p in np.ndenumerate(rho):
        res = bessel_log_integral(
            weighted, sig_lo, sig_hi, mu, -math.log(p),
            gl_order=gl_order, head_dt=head_dt, seams=seams,
        )
        val = res.value
        err = res.err_est
        if plateau != 0.0:
            val += plateau * r_edge**n * bessel_j(n, p * r_edge) / p
        out[i] = inv_pref * p ** (1.0 - n) * val
        worst_err = max(worst_err, inv_pref * p ** (1.0 - n) * err)

    scale = float(np.max(np.abs(out))) if out.size else 1.0
    if worst_err / max(scale, 1e-300) > quad_tol:
        raise NonConvergenceError(
            "radial analysis error estimate exceeds the requested tolerance",
            achieved=worst_err / scale,
            requested=quad_tol,
        )
    if np.max(np.abs(out.imag)) == 0.0:
        return out.real
    return out
