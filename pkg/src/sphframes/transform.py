"""Discrete Laplace-Fourier analysis/synthesis and the weighted least-squares fit.

With f1 = I_N f (samples scaled by sqrt(mu_N)) and the weighted design
Phi_1 = I_N Phi, the Gram matrix Phi_1^H Phi_1 is the identity for every
degree bound m <= N.  The least-squares solution therefore collapses to
a~ = Phi_1^H f1, i.e. the discrete Laplace-Fourier coefficients, and no
normal-equation system is ever formed or solved here.

Every reduction over nodes goes through :func:`sphframes.grid.ordered_sum`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable
from typing import NamedTuple
from typing import Optional

import numpy as np

from .errors import ConsistencyError
from .errors import DegreeBoundError
from .errors import DomainError
from .errors import LengthMismatchError
from .grid import SphericalGrid
from .grid import discrete_integral
from .grid import ordered_sum
from .grid import points_array
from .harmonics import HarmonicIndex
from .harmonics import grid_harmonic_matrix
from .harmonics import harmonic_matrix
from .harmonics import kernel_partial_sum
from .harmonics import layout_degrees

logger = logging.getLogger(__name__)

# analyze() and the Phi_1^H f1 path must agree to this relative level.
CONSISTENCY_TOL = 1e-10


def _frozen(values: np.ndarray) -> np.ndarray:
    values = np.array(values, dtype=complex)
    values.setflags(write=False)
    return values


def norm2(values: np.ndarray) -> float:
    """Euclidean norm with exactly rounded (order independent) summation."""
    return math.sqrt(math.fsum(np.abs(np.asarray(values)) ** 2))


@dataclass(frozen=True, eq=False)
class CoeffVector:
    """Laplace-Fourier coefficients alpha_nk, n < max_degree, flat layout."""

    max_degree: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        if self.max_degree < 1:
            raise DomainError(f"max_degree must be positive, got {self.max_degree}")
        entries = _frozen(self.entries)
        if entries.shape != (self.max_degree**2,):
            raise LengthMismatchError(
                f"max_degree {self.max_degree} needs {self.max_degree**2} entries, "
                f"got {entries.size}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def zeros(cls, max_degree: int) -> "CoeffVector":
        return cls(max_degree, np.zeros(max_degree * max_degree, dtype=complex))

    @classmethod
    def unit(cls, n: int, k: int, max_degree: int) -> "CoeffVector":
        """The coefficient vector of Y_nk alone."""
        idx = HarmonicIndex(n, k)
        if n >= max_degree:
            raise DegreeBoundError(f"degree {n} does not fit below {max_degree}")
        entries = np.zeros(max_degree * max_degree, dtype=complex)
        entries[idx.flat] = 1.0
        return cls(max_degree, entries)

    @classmethod
    def random(
        cls,
        max_degree: int,
        rng: np.random.Generator,
        min_degree: int = 0,
    ) -> "CoeffVector":
        """Complex Gaussian coefficients supported on min_degree <= n < max_degree."""
        size = max_degree * max_degree
        entries = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        entries[layout_degrees(max_degree) < min_degree] = 0.0
        return cls(max_degree, entries)

    def get(self, n: int, k: int) -> complex:
        idx = HarmonicIndex(n, k)
        if n >= self.max_degree:
            return 0j
        return complex(self.entries[idx.flat])

    def degrees(self) -> np.ndarray:
        return layout_degrees(self.max_degree)

    def resized(self, max_degree: int) -> "CoeffVector":
        """Truncate to, or zero-pad up to, a new degree bound."""
        entries = np.zeros(max_degree * max_degree, dtype=complex)
        keep = min(max_degree, self.max_degree) ** 2
        entries[:keep] = self.entries[:keep]
        return CoeffVector(max_degree, entries)

    def norm(self) -> float:
        """L2(S^2) norm of the represented function (Parseval)."""
        return norm2(self.entries)


@dataclass(frozen=True, eq=False)
class SampleVector:
    """Function values at the grid nodes, canonical node order."""

    grid_N: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.grid_N < 1:
            raise DomainError(f"grid order must be positive, got {self.grid_N}")
        values = _frozen(self.values)
        expected = self.grid_N * (2 * self.grid_N + 1)
        if values.shape != (expected,):
            raise LengthMismatchError(
                f"order-{self.grid_N} grid has {expected} nodes, got {values.size} samples"
            )
        object.__setattr__(self, "values", values)

    def weighted(self, grid: SphericalGrid) -> np.ndarray:
        """Return f1 = I_N f."""
        _check_grid(grid, self)
        return np.sqrt(grid.node_weights) * self.values


class LeastSquaresFit(NamedTuple):
    coeffs: CoeffVector
    residual: float


def _check_grid(grid: SphericalGrid, samples: SampleVector) -> None:
    if samples.grid_N != grid.N:
        raise LengthMismatchError(
            f"samples belong to an order-{samples.grid_N} grid, not order {grid.N}"
        )


def _check_degree(grid: SphericalGrid, m: int) -> None:
    if m < 1:
        raise DomainError(f"max degree must be positive, got {m}")
    if m > grid.N:
        raise DegreeBoundError(
            f"max degree {m} exceeds grid order {grid.N}: "
            "discrete orthogonality only holds for degrees below N"
        )


def _ordered_matvec(matrix: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """matrix @ vector, accumulating columns in layout order."""
    return ordered_sum((matrix * vector[None, :]).T)


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def sample_on_grid(grid: SphericalGrid, fn: Callable[[np.ndarray], np.ndarray]) -> SampleVector:
    """Evaluate ``fn`` on the (L, 3) node array and wrap the result."""
    values = np.asarray(fn(grid.points), dtype=complex)
    return SampleVector(grid.N, values)


# ---------------------------------------------------------------------------
# Analysis / synthesis
# ---------------------------------------------------------------------------


def analyze(grid: SphericalGrid, samples: SampleVector, max_degree: int) -> CoeffVector:
    """Discrete Laplace-Fourier coefficients of the sampled function.

    alpha_nk = sum_p f(xi_p) conj(Y_nk(xi_p)) mu_N(xi_p) for all n < max_degree.

    Raises:
        DegreeBoundError: if ``max_degree > grid.N``.
    """
    _check_degree(grid, max_degree)
    _check_grid(grid, samples)
    Y = grid_harmonic_matrix(grid, max_degree)
    terms = np.conj(Y) * (samples.values * grid.node_weights)[:, None]
    return CoeffVector(max_degree, ordered_sum(terms))


def synthesize(coeffs: CoeffVector, points) -> np.ndarray:
    """Return f(eta) = sum alpha_nk Y_nk(eta) at every point."""
    pts = points_array(points)
    if pts.shape[0] == 0:
        return np.zeros(0, dtype=complex)
    Y = harmonic_matrix(coeffs.max_degree, pts)
    return _ordered_matvec(Y, coeffs.entries)


def synthesize_on_grid(coeffs: CoeffVector, grid: SphericalGrid) -> SampleVector:
    """Synthesize at the grid nodes (exact node angles)."""
    Y = grid_harmonic_matrix(grid, coeffs.max_degree)
    return SampleVector(grid.N, _ordered_matvec(Y, coeffs.entries))


def roundtrip_error(grid: SphericalGrid, max_degree: int, rng: np.random.Generator) -> float:
    """Relative max error of analyze(synthesize(a)) for a random a."""
    coeffs = CoeffVector.random(max_degree, rng)
    back = analyze(grid, synthesize_on_grid(coeffs, grid), max_degree)
    scale = float(np.max(np.abs(coeffs.entries)))
    return float(np.max(np.abs(back.entries - coeffs.entries))) / scale


# ---------------------------------------------------------------------------
# Weighted least squares
# ---------------------------------------------------------------------------


def build_weighted_design(grid: SphericalGrid, max_degree: int) -> np.ndarray:
    """Return Phi_1 (L x m^2): entry (p, nk) = Y_nk(xi_p) sqrt(mu_N(xi_p)).

    Raises:
        DegreeBoundError: if ``max_degree > grid.N``.
    """
    _check_degree(grid, max_degree)
    Y = grid_harmonic_matrix(grid, max_degree)
    return Y * np.sqrt(grid.node_weights)[:, None]


def gram_residual(
    grid: SphericalGrid,
    max_degree: int,
    method: str = "matrix",
    enforce_bound: bool = True,
) -> float:
    """Return max |Phi_1^H Phi_1 - I| over all entries.

    Args:
        grid: The nodal grid.
        max_degree: Degree bound m of the columns.
        method: ``"matrix"`` accumulates the product row by row;
            ``"pairwise"`` evaluates each of the m^4 entries as a discrete
            integral.  Both must agree.
        enforce_bound: Reject ``max_degree > grid.N``.  Disabling it is only
            meaningful for demonstrating that the identity breaks there.
    """
    if enforce_bound:
        _check_degree(grid, max_degree)
    Y = grid_harmonic_matrix(grid, max_degree)
    size = max_degree * max_degree
    if method == "matrix":
        design = Y * np.sqrt(grid.node_weights)[:, None]
        gram = np.zeros((size, size), dtype=complex)
        for row in design:
            gram += np.outer(np.conj(row), row)
    elif method == "pairwise":
        gram = np.empty((size, size), dtype=complex)
        for a in range(size):
            conj_a = np.conj(Y[:, a])
            for b in range(size):
                gram[a, b] = discrete_integral(grid, conj_a * Y[:, b])
    else:
        raise ValueError(f"unknown gram method {method!r}")
    residual = float(np.max(np.abs(gram - np.eye(size))))
    logger.debug("gram residual N=%d m=%d (%s): %.3e", grid.N, max_degree, method, residual)
    return residual


def weighted_least_squares(
    grid: SphericalGrid, samples: SampleVector, max_degree: int
) -> LeastSquaresFit:
    """Solve min_a ||f1 - Phi_1 a||_2 in closed form.

    Returns a~ = Phi_1^H f1 together with the weighted residual
    ||f1 - Phi_1 a~||_2.  The coefficients are cross-checked against
    :func:`analyze`.

    Raises:
        DegreeBoundError: if ``max_degree > grid.N``.
        ConsistencyError: if the two coefficient computations disagree.
    """
    design = build_weighted_design(grid, max_degree)
    f1 = samples.weighted(grid)
    coeffs = CoeffVector(max_degree, ordered_sum(np.conj(design) * f1[:, None]))

    reference = analyze(grid, samples, max_degree)
    scale = max(1.0, float(np.max(np.abs(samples.values), initial=0.0)))
    deviation = float(np.max(np.abs(coeffs.entries - reference.entries)))
    if deviation > CONSISTENCY_TOL * scale:
        raise ConsistencyError(
            f"Phi_1^H f1 and analyze() differ by {deviation:.3e} (N={grid.N}, m={max_degree})"
        )

    residual = norm2(f1 - _ordered_matvec(design, coeffs.entries))
    logger.debug("weighted fit N=%d m=%d residual %.3e", grid.N, max_degree, residual)
    return LeastSquaresFit(coeffs, residual)


def best_approximant(grid: SphericalGrid, samples: SampleVector, max_degree: int) -> SampleVector:
    """Return the weighted fitted values f~ = Phi_1 a~."""
    fit = weighted_least_squares(grid, samples, max_degree)
    design = build_weighted_design(grid, max_degree)
    return SampleVector(grid.N, _ordered_matvec(design, fit.coeffs.entries))


def node_cosines(a: np.ndarray, b: Optional[np.ndarray] = None) -> np.ndarray:
    """Matrix of inner products a_p . b_q, clamped to [-1, 1]."""
    b = a if b is None else b
    t = a[:, None, 0] * b[None, :, 0]
    t = t + a[:, None, 1] * b[None, :, 1]
    t = t + a[:, None, 2] * b[None, :, 2]
    return np.clip(t, -1.0, 1.0)


def best_approximant_kernel(
    grid: SphericalGrid, samples: SampleVector, max_degree: int
) -> SampleVector:
    """Kernel form of :func:`best_approximant`.

    Entry p is sqrt(mu_N(xi_p)) <f, sum_{n<m} K_n(., xi_p)>_X.
    """
    _check_degree(grid, max_degree)
    _check_grid(grid, samples)
    kernel = kernel_partial_sum(0, max_degree, node_cosines(grid.points))
    weighted = samples.values * grid.node_weights
    inner = ordered_sum(kernel * weighted[:, None])
    return SampleVector(grid.N, np.sqrt(grid.node_weights) * inner)
