"""Log-uniform grids and radial measure grids.

Everything in this package lives on the half-line in logarithmic coordinates:
spectral amplitudes are sampled at t = log(rho) on uniform grids, physical
radial fields at sigma = log(r) on geometric grids.  Two small containers
carry nodes together with quadrature weights so downstream code can treat
"integrate against the natural measure" as a dot product:

* :class:`LogGrid` -- uniform nodes in t with trapezoid weights.  The weights
  integrate plain dt over [t_min, t_max], so ``grid.integrate(values)``
  approximates the line integral of a sampled amplitude.

* :class:`RadialGrid` -- geometrically spaced radii whose weights absorb the
  Jacobian r**(2N-1) dr of the radial measure in ambient dimension 2N.  The
  surface factor is *not* included; multiply by :func:`sphere_measure` for a
  volume integral.

Grids serialize to two-column CSV with a single comment header naming the
grid kind and its construction tolerance, which is all the CLI needs to
round-trip them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "Dimension",
    "LogGrid",
    "RadialGrid",
    "as_dimension",
    "make_log_grid",
    "make_radial_grid",
    "sphere_measure",
]

# Largest supported half-dimension.  Nothing in the package needs ambient
# dimension beyond R^12, and Bessel orders are capped accordingly.
_MAX_HALF_DIM = 6

#: Tolerances declared in serialized headers and asserted by the test suite.
WEIGHT_SUM_TOL = 1e-12
RATIO_TOL = 1e-12


@dataclass(frozen=True)
class Dimension:
    """Half the ambient dimension: fields live on R^(2N) for N = ``half``.

    The even ambient dimension is structural: the critical Sobolev order
    equals N, the sphere is S^(2N-1), and every radial Fourier integral below
    uses the Bessel order N-1.
    """

    half: int

    def __post_init__(self) -> None:
        if isinstance(self.half, bool) or not isinstance(self.half, (int, np.integer)):
            raise TypeError(f"half-dimension must be an integer, got {self.half!r}")
        object.__setattr__(self, "half", int(self.half))
        if not 1 <= self.half <= _MAX_HALF_DIM:
            raise ValueError(
                f"half-dimension must be in [1, {_MAX_HALF_DIM}], got {self.half}"
            )

    @property
    def ambient(self) -> int:
        return 2 * self.half

    @property
    def bessel_order(self) -> int:
        """Order of the Bessel kernel in radial Fourier synthesis on R^(2N)."""
        return self.half - 1


def as_dimension(n: "int | Dimension") -> Dimension:
    """Coerce an integer half-dimension into a validated :class:`Dimension`."""
    if isinstance(n, Dimension):
        return n
    return Dimension(n)


def sphere_measure(n: "int | Dimension") -> float:
    """Surface measure of the unit sphere S^(2N-1) in R^(2N): 2 pi^N / (N-1)!."""
    dim = as_dimension(n)
    return 2.0 * math.pi ** dim.half / math.factorial(dim.half - 1)


# ---------------------------------------------------------------------------
# Log grid (spectral side)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogGrid:
    """Uniform grid in t = log(rho) with trapezoid quadrature weights."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.ndim != 1 or weights.shape != nodes.shape:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if nodes.size < 2:
            raise ValueError("a grid needs at least two nodes")
        if not np.all(np.diff(nodes) > 0.0):
            raise ValueError("grid nodes must be strictly increasing")

    @property
    def t_min(self) -> float:
        return float(self.nodes[0])

    @property
    def t_max(self) -> float:
        return float(self.nodes[-1])

    @property
    def spacing(self) -> float:
        return float(self.nodes[1] - self.nodes[0])

    def __len__(self) -> int:
        return int(self.nodes.size)

    def integrate(self, values: np.ndarray) -> "float | complex":
        """Quadrature of sampled values against dt."""
        values = np.asarray(values)
        if values.shape[-1] != self.nodes.size:
            raise ValueError("values do not match grid length")
        out = np.sum(self.weights * values, axis=-1)
        return complex(out) if np.iscomplexobj(values) else float(out)

    def to_csv(self, path: "str | Path", tol: float = WEIGHT_SUM_TOL) -> None:
        _write_two_column(path, "log-grid", tol, self.nodes, self.weights)

    @classmethod
    def from_csv(cls, path: "str | Path") -> "LogGrid":
        _, nodes, weights = _read_two_column(path, expect_kind="log-grid")
        return cls(nodes, weights)


def make_log_grid(t_min: float, t_max: float, m: int) -> LogGrid:
    """Uniform trapezoid grid with ``m`` nodes on [t_min, t_max].

    Parameters
    ----------
    t_min, t_max : float
        Endpoints in t = log(rho); t_max must exceed t_min.
    m : int
        Number of nodes (>= 2).

    Returns
    -------
    LogGrid
        Nodes linspace(t_min, t_max, m); trapezoid weights (half-weight ends).
        The weights sum to t_max - t_min to within 1e-12 by construction.
    """
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise TypeError(f"node count must be an integer, got {m!r}")
    if m < 2:
        raise ValueError(f"node count must be >= 2, got {m}")
    t_min = float(t_min)
    t_max = float(t_max)
    if not t_max > t_min:
        raise ValueError(f"need t_max > t_min, got [{t_min}, {t_max}]")
    nodes = np.linspace(t_min, t_max, int(m))
    h = (t_max - t_min) / (int(m) - 1)
    weights = np.full(int(m), h)
    weights[0] = weights[-1] = 0.5 * h
    return LogGrid(nodes, weights)


# ---------------------------------------------------------------------------
# Radial grid (physical side)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadialGrid:
    """Geometric radii with weights for the measure r**(2N-1) dr.

    ``integrate(values)`` approximates the radial part of a volume integral
    over the annulus [r_min, r_max]; multiply by ``sphere_measure(half_dim)``
    to restore the angular factor.
    """

    radii: np.ndarray
    weights: np.ndarray
    half_dim: int

    def __post_init__(self) -> None:
        radii = np.asarray(self.radii, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "half_dim", as_dimension(self.half_dim).half)
        if radii.ndim != 1 or weights.shape != radii.shape:
            raise ValueError("radii and weights must be 1-d arrays of equal length")
        if radii.size < 2:
            raise ValueError("a grid needs at least two nodes")
        if not np.all(radii > 0.0) or not np.all(np.diff(radii) > 0.0):
            raise ValueError("radii must be positive and strictly increasing")
        ratios = radii[1:] / radii[:-1]
        if np.max(np.abs(ratios / ratios[0] - 1.0)) > 1e3 * RATIO_TOL:
            raise ValueError("radii must be geometrically spaced")

    @property
    def log_nodes(self) -> np.ndarray:
        return np.log(self.radii)

    def __len__(self) -> int:
        return int(self.radii.size)

    def integrate(self, values: np.ndarray) -> "float | complex":
        """Quadrature of sampled values against r**(2N-1) dr."""
        values = np.asarray(values)
        if values.shape[-1] != self.radii.size:
            raise ValueError("values do not match grid length")
        out = np.sum(self.weights * values, axis=-1)
        return complex(out) if np.iscomplexobj(values) else float(out)

    def to_csv(self, path: "str | Path", tol: float = RATIO_TOL) -> None:
        _write_two_column(path, f"radial-grid-N{self.half_dim}", tol, self.radii, self.weights)

    @classmethod
    def from_csv(cls, path: "str | Path") -> "RadialGrid":
        kind, radii, weights = _read_two_column(path, expect_prefix="radial-grid-N")
        half = int(kind.removeprefix("radial-grid-N"))
        return cls(radii, weights, half)


def make_radial_grid(r_min: float, r_max: float, m: int, n: "int | Dimension") -> RadialGrid:
    """Geometric grid on [r_min, r_max] weighting the measure r**(2N-1) dr.

    Weights are trapezoid in sigma = log(r) with the Jacobian r**(2N)
    absorbed, i.e. ``weights @ f(radii)`` approximates
    integral of f(r) r**(2N-1) dr.
    """
    dim = as_dimension(n)
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise TypeError(f"node count must be an integer, got {m!r}")
    if m < 2:
        raise ValueError(f"node count must be >= 2, got {m}")
    r_min = float(r_min)
    r_max = float(r_max)
    if not (r_min > 0.0 and r_max > r_min):
        raise ValueError(f"need 0 < r_min < r_max, got [{r_min}, {r_max}]")
    sigma = np.linspace(math.log(r_min), math.log(r_max), int(m))
    h = (sigma[-1] - sigma[0]) / (int(m) - 1)
    w_sigma = np.full(int(m), h)
    w_sigma[0] = w_sigma[-1] = 0.5 * h
    radii = np.exp(sigma)
    weights = np.exp(2 * dim.half * sigma) * w_sigma
    return RadialGrid(radii, weights, dim.half)


# ---------------------------------------------------------------------------
# CSV helpers (single comment header: kind + tolerance, then two columns)
# ---------------------------------------------------------------------------


def _write_two_column(path, kind: str, tol: float, col0: np.ndarray, col1: np.ndarray) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        fh.write(f"# kind={kind} tol={tol:.3e}\n")
        for a, b in zip(col0, col1):
            fh.write(f"{a:.16e},{b:.16e}\n")


def _read_two_column(path, expect_kind: "str | None" = None, expect_prefix: "str | None" = None):
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith("# kind="):
            raise ValueError(f"{path}: missing grid header")
        kind = header.split()[1].removeprefix("kind=")
        if expect_kind is not None and kind != expect_kind:
            raise ValueError(f"{path}: expected kind={expect_kind}, found {kind}")
        if expect_prefix is not None and not kind.startswith(expect_prefix):
            raise ValueError(f"{path}: expected kind prefix {expect_prefix}, found {kind}")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    return kind, data[:, 0], data[:, 1]
