"""Dimension-dependent constants of the critical exponential-integrability setup.

On R^(2N) with the order-N energy, four constants recur everywhere:

``omega``
    Surface measure of S^(2N-1): 2 pi^N / (N-1)!.
``beta``
    Sharp Adams/Moser-type exponential threshold,
    2N pi^(2N) 2^(2N) / omega.  Growth functionals stay bounded along
    concentrating families at this coupling and blow up above it.
``c_synth``
    Normalization of spectral synthesis of a concentrating bubble,
    1 / ((2 pi)^N sqrt(omega)).
``c_moser``
    Plateau constant of log-ramp (Moser-type) profiles,
    sqrt(omega) / (2 pi)^N.

The product c_synth * c_moser = (2 pi)^(-2N) is a useful cross-check and is
pinned in the tests together with the closed forms for N = 1, 2, 3.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .grids import Dimension, as_dimension, sphere_measure

__all__ = ["Constants", "constants"]


@dataclass(frozen=True)
class Constants:
    half_dim: int
    omega: float
    beta: float
    c_synth: float
    c_moser: float

    def as_dict(self) -> dict:
        return asdict(self)


_CACHE: "dict[int, Constants]" = {}


def constants(n: "int | Dimension") -> Constants:
    """All four constants for half-dimension N (ambient R^(2N))."""
    dim = as_dimension(n)
    got = _CACHE.get(dim.half)
    if got is None:
        half = dim.half
        omega = sphere_measure(dim)
        beta = 2.0 * half * math.pi ** (2 * half) * 4.0**half / omega
        c_synth = 1.0 / ((2.0 * math.pi) ** half * math.sqrt(omega))
        c_moser = math.sqrt(omega) / (2.0 * math.pi) ** half
        got = Constants(half, omega, beta, c_synth, c_moser)
        _CACHE[half] = got
    return got
