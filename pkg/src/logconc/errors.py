"""Package-wide exception taxonomy.

Two failure families matter to callers (and map to CLI exit codes):
configuration problems (bad keys, bad values, malformed manifests) and
numerical non-convergence (a quadrature or iteration that cannot meet its
declared tolerance within its budget).  Everything else is a plain bug and
deliberately *not* wrapped.
"""

from __future__ import annotations

__all__ = ["LogconcError", "ConfigError", "NonConvergenceError"]


class LogconcError(Exception):
    """Base class for package-defined failures."""


class ConfigError(LogconcError):
    """Invalid configuration, manifest, or argument combination (CLI exit 1)."""


class NonConvergenceError(LogconcError):
    """A numerical routine exhausted its budget before meeting tolerance (CLI exit 2).

    Carries optional context so partial results can still be reported.
    """

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.context = dict(context)
