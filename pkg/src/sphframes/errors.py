"""Exception hierarchy for sphframes.

Every error derives from :class:`SphFramesError` and from the built-in type a
caller would naturally catch (``ValueError`` for bad input, ``RuntimeError``
for numerical failures), so ``except ValueError`` keeps working.
"""


class SphFramesError(Exception):
    """Base class for all sphframes errors."""


class DomainError(SphFramesError, ValueError):
    """Argument outside the mathematical domain (|x| > 1, |k| > n, ...)."""


class DegreeBoundError(SphFramesError, ValueError):
    """Degree or level bound violated (m > N, j > j0, ...)."""


class LengthMismatchError(SphFramesError, ValueError):
    """Vector length does not match the grid or coefficient layout."""


class FormatError(SphFramesError, ValueError):
    """Malformed, incomplete or duplicated rows in an input file."""


class ConvergenceError(SphFramesError, RuntimeError):
    """An iteration did not converge within its cap."""


class ConsistencyError(SphFramesError, RuntimeError):
    """Two computations of the same quantity disagree."""


class ConfigError(SphFramesError, ValueError):
    """Invalid run configuration (flags or environment overrides)."""
