"""Built-in test functions for the ``--fn`` flag.

Each function maps an ``(P, 3)`` array of unit vectors to ``P`` complex
values.  Names are parsed as ``name[:arg[:arg]]``:

* ``const`` -- the constant 1.
* ``Y:n:k`` -- the spherical harmonic Y_nk.
* ``gauss-bump[:ax,ay,az]`` -- exp(xi . a), not band-limited.
* ``random:m[:seed]`` -- a seeded random element of degree < m.
"""

from __future__ import annotations

import logging
from typing import Callable
from typing import List

import numpy as np

from .errors import DomainError
from .grid import points_array
from .harmonics import HarmonicIndex
from .harmonics import harmonic_matrix
from .transform import CoeffVector
from .transform import synthesize

logger = logging.getLogger(__name__)

SampleFunction = Callable[[np.ndarray], np.ndarray]

DEFAULT_BUMP_AXIS = (0.3, -0.2, 0.5)

# ---------------------------------------------------------------------------
# Function implementations
# ---------------------------------------------------------------------------


def fn_const(points: np.ndarray) -> np.ndarray:
    """Return 1 at every point."""
    return np.ones(points_array(points).shape[0], dtype=complex)


def make_harmonic(n: int, k: int) -> SampleFunction:
    idx = HarmonicIndex(n, k)

    def _fn(points: np.ndarray) -> np.ndarray:
        return harmonic_matrix(idx.n + 1, points)[:, idx.flat]

    return _fn


def make_gauss_bump(axis=DEFAULT_BUMP_AXIS) -> SampleFunction:
    a = np.asarray(axis, dtype=float)
    if a.shape != (3,):
        raise DomainError(f"gauss-bump needs three components, got {axis!r}")

    def _fn(points: np.ndarray) -> np.ndarray:
        pts = points_array(points)
        t = pts[:, 0] * a[0] + pts[:, 1] * a[1] + pts[:, 2] * a[2]
        return np.exp(t).astype(complex)

    return _fn


def make_random(max_degree: int, seed: int = 0) -> SampleFunction:
    coeffs = CoeffVector.random(max_degree, np.random.default_rng(seed))

    def _fn(points: np.ndarray) -> np.ndarray:
        return synthesize(coeffs, points)

    return _fn


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _ints(name: str, args: List[str], low: int, high: int) -> List[int]:
    if not low <= len(args) <= high:
        raise DomainError(f"{name} takes {low}..{high} arguments, got {len(args)}")
    try:
        return [int(a) for a in args]
    except ValueError as exc:
        raise DomainError(f"{name} arguments must be integers, got {args!r}") from exc


def _build_const(args: List[str]) -> SampleFunction:
    _ints("const", args, 0, 0)
    return fn_const


def _build_harmonic(args: List[str]) -> SampleFunction:
    n, k = _ints("Y", args, 2, 2)
    return make_harmonic(n, k)


def _build_gauss_bump(args: List[str]) -> SampleFunction:
    if not args:
        return make_gauss_bump()
    if len(args) != 1:
        raise DomainError("gauss-bump takes one argument ax,ay,az")
    try:
        axis = tuple(float(v) for v in args[0].split(","))
    except ValueError as exc:
        raise DomainError(f"gauss-bump axis must be numeric, got {args[0]!r}") from exc
    return make_gauss_bump(axis)


def _build_random(args: List[str]) -> SampleFunction:
    values = _ints("random", args, 1, 2)
    if values[0] < 1:
        raise DomainError(f"random needs a positive degree bound, got {values[0]}")
    return make_random(*values)


# ---------------------------------------------------------------------------
# Public registry
# ---------------------------------------------------------------------------

FUNCTION_NAMES: list[str] = ["const", "Y", "gauss-bump", "random"]

_FUNCTION_MAP: dict[str, Callable[[List[str]], SampleFunction]] = {
    "const": _build_const,
    "Y": _build_harmonic,
    "gauss-bump": _build_gauss_bump,
    "random": _build_random,
}


def get_function(text: str) -> SampleFunction:
    """Return the sample function named by *text* (``name[:arg...]``).

    Raises:
        DomainError: on an unknown name or malformed arguments.
    """
    name, *args = text.strip().split(":")
    builder = _FUNCTION_MAP.get(name)
    if builder is None:
        raise DomainError(
            f"unknown function {name!r}; choose from {', '.join(FUNCTION_NAMES)}"
        )
    logger.debug("resolved --fn %s", text)
    return builder(args)
