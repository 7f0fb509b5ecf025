"""First-kind Bessel functions used by every oscillatory quadrature here.

Thin, validated wrappers over SciPy's Cephes-based routines.  Orders are
capped at what radial synthesis on R^(2N) and the low angular modes actually
need; arguments are nonnegative because every kernel argument is r * exp(t).

Accuracy: scipy.special's j0/j1 are the Cephes polynomial/rational fits
(absolute error a few 1e-16 near the axis, a few ulps of the envelope
sqrt(2/(pi x)) in the asymptotic regime); jv for small integer orders is
comparable.  The package-wide contract asserted in the tests is far looser:
absolute error <= 1e-8 on [0, 1e6] against an independent series/Wronskian
oracle.

References
----------
Moshier, Cephes mathematical function library (as shipped by SciPy).
Abramowitz & Stegun, Handbook of Mathematical Functions, ch. 9.
"""

from __future__ import annotations

import numpy as np
from scipy import special

__all__ = ["MAX_ORDER", "bessel_j", "bessel_j_prime"]

MAX_ORDER = 7

#: First positive zero of J_0; handy anchor for zero-aligned panel splitting.
J0_FIRST_ZERO = 2.404825557695773


def _check_order(order: int) -> int:
    if isinstance(order, bool) or not isinstance(order, (int, np.integer)):
        raise TypeError(f"Bessel order must be an integer, got {order!r}")
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"Bessel order must be in [0, {MAX_ORDER}], got {order}")
    return int(order)


def bessel_j(order: int, x) -> "float | np.ndarray":
    """J_order(x) for x >= 0.

    Parameters
    ----------
    order : int
        Order in [0, 7].
    x : array_like
        Nonnegative argument(s).

    Returns
    -------
    float or ndarray
        Scalar in, scalar out; array in, array out.
    """
    order = _check_order(order)
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0.0):
        raise ValueError("bessel_j requires x >= 0")
    if order == 0:
        out = special.j0(xs)
    elif order == 1:
        out = special.j1(xs)
    else:
        out = special.jv(order, xs)
    if xs.ndim == 0:
        return float(out)
    return out


def bessel_j_prime(order: int, x) -> "float | np.ndarray":
    """d/dx J_order(x) for x >= 0 (used by asymptotic tail closures)."""
    order = _check_order(order)
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0.0):
        raise ValueError("bessel_j_prime requires x >= 0")
    out = special.jvp(order, xs)
    if xs.ndim == 0:
        return float(out)
    return out
