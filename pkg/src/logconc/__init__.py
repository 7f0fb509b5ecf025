"""logconc: log-scale concentration analysis in critical Sobolev spaces.

Computes Orlicz/Sobolev/B-norms of radial and planar fields, synthesizes
log-concentrating test families by radial Fourier quadrature, and runs a
greedy scale/core/profile decomposition pipeline with a verifiable energy
ledger.  See the README for the command-line entry points.
"""

from .errors import ConfigError, LogconcError, NonConvergenceError

__version__ = "0.1.0"

__all__ = ["ConfigError", "LogconcError", "NonConvergenceError", "__version__"]
