"""Panel quadrature for log-coordinate Bessel integrals.

The integrals this package lives on nearly all look like

    I(tau) = integral of  a(t) * J_mu(exp(t - tau)) dt

over a finite t-window, with a piecewise-smooth amplitude ``a`` and a
log-shift tau that places anywhere from zero to astronomically many Bessel
oscillations inside the window (u = exp(t - tau) reaches exp(alpha * s) for
scale parameters alpha in the hundreds).  Strategy, in three regimes:

* smooth head (u <= u_switch): plain Gauss-Legendre panels in t.  The phase
  changes by at most u_switch per unit of t there, so bounded-phase panels
  with a fixed rule are accurate to near machine precision.

* oscillatory mid-range: substitute u = exp(t - tau) and split panels at the
  asymptotic Bessel zeros (McMahon spacing pi), one fixed Gauss-Legendre rule
  per zero interval, summed directly while the interval count fits the
  budget.  This is the classical zero-aligned Longman decomposition.

* long tails: when the window covers more zero intervals than the direct
  budget, the alternating interval series is summed by iterated averaging
  (Euler's transformation).  For amplitudes of polynomial-in-log growth the
  transform converges to the Abel-regularized tail value, which is exactly
  what the difference-of-tails representation of a finite integral needs.
  The amplitude callable must then be evaluable (smoothly) beyond the nominal
  window; every piecewise-polynomial amplitude in this package is.

References
----------
Longman, Proc. Cambridge Philos. Soc. 52 (1956): interval splitting at the
zeros of the oscillating factor.
Press et al., Numerical Recipes, ch. 5: Euler / van Wijngaarden summation of
alternating series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import NonConvergenceError
from .bessel import bessel_j

__all__ = [
    "BesselIntegralResult",
    "bessel_log_integral",
    "euler_transform",
    "gauss_rule",
    "integrate_panels",
]

_EPS = float(np.finfo(float).eps)

# Defaults shared by every caller; overridable per call.
U_SWITCH = 8.0          # hand-off from smooth-head panels to zero-aligned ones
U_QUIET = 1e-3          # below this u the Bessel factor is flat: wide panels
DIRECT_INTERVAL_CAP = 4000
TAIL_TERMS = 48


_GAUSS_CACHE: "dict[int, tuple[np.ndarray, np.ndarray]]" = {}


def gauss_rule(order: int) -> "tuple[np.ndarray, np.ndarray]":
    """Cached Gauss-Legendre nodes/weights on [-1, 1]."""
    got = _GAUSS_CACHE.get(order)
    if got is None:
        got = np.polynomial.legendre.leggauss(order)
        _GAUSS_CACHE[order] = got
    return got


def integrate_panels(fn, breaks, order: int = 12) -> complex:
    """Sum of Gauss-Legendre panel integrals of ``fn`` between ``breaks``.

    ``breaks`` is an increasing 1-d array; ``fn`` must accept a flat ndarray.
    Returns a complex (use .real at call sites that know better).
    """
    breaks = np.asarray(breaks, dtype=float)
    if breaks.size < 2:
        return 0.0 + 0.0j
    x, w = gauss_rule(order)
    mid = 0.5 * (breaks[1:] + breaks[:-1])
    half = 0.5 * (breaks[1:] - breaks[:-1])
    nodes = mid[:, None] + half[:, None] * x[None, :]
    vals = np.asarray(fn(nodes.ravel())).reshape(nodes.shape)
    return complex(np.sum(half * (vals @ w)))


def euler_transform(terms) -> "tuple[complex, float]":
    """Iterated-averaging (Euler) estimate of sum(terms) for alternating terms.

    Builds the full averaging triangle over the partial sums and returns the
    deepest estimate together with the spread of the last two stages as an
    error proxy.  Converges for decaying alternating terms and, in the Abel
    sense, for polynomially growing ones.
    """
    terms = np.asarray(terms, dtype=complex)
    if terms.size == 0:
        return 0.0 + 0.0j, 0.0
    s = np.cumsum(terms)
    ests = [complex(s[-1])]
    while s.size > 1:
        s = 0.5 * (s[:-1] + s[1:])
        ests.append(complex(s[-1]))
    if len(ests) == 1:
        return ests[0], abs(ests[0])
    return ests[-1], abs(ests[-1] - ests[-2])


def _mcmahon_zeros(mu: int, k_lo: int, k_hi: int) -> np.ndarray:
    """Approximate k-th positive zeros of J_mu for k in [k_lo, k_hi)."""
    k = np.arange(k_lo, k_hi, dtype=float)
    return (k + 0.5 * mu - 0.25) * math.pi


def _first_zero_index(mu: int, u: float) -> int:
    """Smallest k with McMahon zero strictly above u."""
    return int(math.floor(u / math.pi - 0.5 * mu + 0.25)) + 1


@dataclass(frozen=True)
class BesselIntegralResult:
    value: complex
    err_est: float
    evals: int

    @property
    def real(self) -> float:
        return float(self.value.real)


def _interval_sums(g, breaks: np.ndarray, mu: int, order: int) -> np.ndarray:
    """Per-interval Gauss-Legendre integrals of g(u) * J_mu(u)."""
    x, w = gauss_rule(order)
    mid = 0.5 * (breaks[1:] + breaks[:-1])
    half = 0.5 * (breaks[1:] - breaks[:-1])
    nodes = mid[:, None] + half[:, None] * x[None, :]
    flat = nodes.ravel()
    vals = np.asarray(g(flat), dtype=complex).reshape(nodes.shape) * bessel_j(mu, flat).reshape(
        nodes.shape
    )
    return half * (vals @ w)


def _euler_tail(g, v: float, mu: int, order: int, n_terms: int) -> "tuple[complex, float, int]":
    """Abel-regularized integral of g(u) J_mu(u) du over [v, infinity)."""
    k0 = _first_zero_index(mu, v)
    zeros = _mcmahon_zeros(mu, k0, k0 + n_terms + 1)
    breaks = np.concatenate(([v], zeros))
    terms = _interval_sums(g, breaks, mu, order)
    # the partial head interval [v, z_k0] is summed directly; the rest feed
    # the averaging triangle as an alternating series
    head = complex(terms[0])
    est, err = euler_transform(terms[1:])
    evals = order * (breaks.size - 1)
    return head + est, err, evals


def bessel_log_integral(
    amp,
    t_lo: float,
    t_hi: float,
    mu: int,
    tau: float,
    *,
    gl_order: int = 12,
    head_dt: float = 0.25,
    seams: "tuple | list" = (),
    u_switch: float = U_SWITCH,
    direct_cap: int = DIRECT_INTERVAL_CAP,
    tail_terms: int = TAIL_TERMS,
    extendable: bool = True,
) -> BesselIntegralResult:
    """Integral of amp(t) * J_mu(exp(t - tau)) over [t_lo, t_hi].

    Parameters
    ----------
    amp : callable
        Vectorized amplitude a(t); must be smooth on the window except at
        declared ``seams``.  If the window spans more oscillations than
        ``direct_cap`` the Euler-tail path evaluates ``amp`` beyond the
        window, which requires a smooth extension (``extendable=True``;
        every polynomial piece qualifies).
    mu : int
        Bessel order.
    tau : float
        Log-shift: the oscillation argument is u = exp(t - tau).
    seams : sequence of float
        t-locations of known kinks or jumps in the amplitude.  Panel
        boundaries are pinned to them (head and direct oscillatory paths;
        the Euler path assumes a smooth amplitude and ignores them).

    Returns
    -------
    BesselIntegralResult
        value (complex), an error estimate, and the evaluation count.

    Raises
    ------
    NonConvergenceError
        If the direct budget is exhausted and the amplitude was declared
        non-extendable.
    """
    if not t_hi > t_lo:
        return BesselIntegralResult(0.0 + 0.0j, 0.0, 0)

    value = 0.0 + 0.0j
    err = 0.0
    evals = 0

    # --- smooth head: u <= u_switch, panels in t ---------------------------
    t_switch = tau + math.log(u_switch)
    head_hi = min(t_hi, t_switch)
    if head_hi > t_lo:
        t_quiet = tau + math.log(U_QUIET)
        pins = {t_lo, head_hi}
        if t_lo < t_quiet < head_hi:
            pins.add(t_quiet)
        pins.update(float(s) for s in seams if t_lo < s < head_hi)
        edges = sorted(pins)
        breaks: "list[float]" = []
        for a, b in zip(edges[:-1], edges[1:]):
            dt = 4.0 * head_dt if b <= t_quiet else head_dt
            n = max(1, int(math.ceil((b - a) / dt)))
            seg = np.linspace(a, b, n + 1)
            breaks.extend(seg[:-1])
        breaks.append(head_hi)
        barr = np.asarray(breaks)

        def head_fn(t):
            return np.asarray(amp(t), dtype=complex) * bessel_j(mu, np.exp(t - tau))

        value += integrate_panels(head_fn, barr, order=gl_order)
        evals += gl_order * (barr.size - 1)
        err += _EPS * abs(value)

    # --- oscillatory range: u in [u_switch, u_hi], zero-aligned in u -------
    if t_hi > t_switch:
        s_lo = max(t_lo, t_switch) - tau
        s_hi = t_hi - tau
        u_lo = math.exp(s_lo)

        def g(u):
            u = np.asarray(u, dtype=float)
            return np.asarray(amp(tau + np.log(u)), dtype=complex) / u

        if s_hi <= math.log(u_lo + math.pi * direct_cap):
            u_hi = math.exp(s_hi)
            k0 = _first_zero_index(mu, u_lo)
            zeros = _mcmahon_zeros(mu, k0, k0 + int((u_hi - u_lo) / math.pi) + 2)
            inner = zeros[zeros < u_hi]
            u_seams = [math.exp(s - tau) for s in seams
                       if s_lo + tau < s < t_hi]
            breaks = np.unique(np.concatenate(([u_lo], inner, u_seams, [u_hi])))
            terms = _interval_sums(g, breaks, mu, gl_order)
            value += complex(np.sum(terms))
            err += _EPS * float(np.sum(np.abs(terms)))
            evals += gl_order * (breaks.size - 1)
        else:
            if not extendable:
                raise NonConvergenceError(
                    "oscillatory window spans more than the direct interval budget "
                    f"({direct_cap} zero intervals) and the amplitude is not extendable",
                    mu=mu,
                    tau=tau,
                    t_window=(t_lo, t_hi),
                )
            lo_val, lo_err, lo_evals = _euler_tail(g, u_lo, mu, gl_order, tail_terms)
            value += lo_val
            err += lo_err
            evals += lo_evals
            if s_hi < 700.0:  # beyond that the upper tail underflows to nothing
                u_hi = math.exp(s_hi)
                hi_val, hi_err, hi_evals = _euler_tail(g, u_hi, mu, gl_order, tail_terms)
                value -= hi_val
                err += hi_err
                evals += hi_evals

    return BesselIntegralResult(value, err, evals)
