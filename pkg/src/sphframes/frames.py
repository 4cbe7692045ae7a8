"""Multiresolution ladder, scaling-function and wavelet tight frames.

Given strictly increasing cutoffs m_1 < m_2 < ... and the grid order N,
level j (j <= j0, the last level with m_j <= N) carries

* the space V_j of spherical polynomials of degree < m_j,
* the scaling functions phi_j(., xi) = sum_{n < m_j} K_n(., xi),

and each pair of consecutive levels (j <= j0 - 1) carries

* the detail space W_j (degrees m_j <= n < m_{j+1}),
* the wavelets psi_j(., xi) = sum_{m_j <= n < m_{j+1}} K_n(., xi).

Centered at the grid nodes and weighted by sqrt(mu_N), both families are
tight frames with bound 1.  Kernels are always evaluated through the
Legendre form (:func:`sphframes.harmonics.kernel_partial_sum`).

Frame coefficients are the *unweighted* discrete inner products
<f, phi_j(., xi_l)>_X; the weights mu_N enter only in synthesis and norms.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from .errors import DegreeBoundError
from .errors import DomainError
from .errors import LengthMismatchError
from .grid import SphericalGrid
from .grid import SpherePoint
from .grid import discrete_integral
from .grid import ordered_sum
from .grid import points_array
from .harmonics import eval_Y_batch
from .harmonics import kernel_partial_sum
from .harmonics import layout_degrees
from .transform import CoeffVector
from .transform import SampleVector
from .transform import analyze
from .transform import node_cosines
from .transform import synthesize_on_grid

logger = logging.getLogger(__name__)

# Gap above which frame checks log that the input left the space.
FRAME_GAP_TOL = 1e-9

SCALING = "scaling"
WAVELET = "wavelet"


# ---------------------------------------------------------------------------
# Ladder
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiresolutionLadder:
    """Cutoffs m_1 < m_2 < ... capped by the grid order N.

    Levels are 1-based.  ``j0`` is the largest level with m_j <= N.
    """

    cutoffs: Tuple[int, ...]
    cap: int

    def __post_init__(self) -> None:
        cutoffs = tuple(int(m) for m in self.cutoffs)
        object.__setattr__(self, "cutoffs", cutoffs)
        if self.cap < 1:
            raise DegreeBoundError(f"ladder cap must be positive, got {self.cap}")
        if not cutoffs:
            raise DegreeBoundError("ladder needs at least one cutoff")
        if cutoffs[0] < 1:
            raise DegreeBoundError(f"cutoffs must be positive integers, got {cutoffs}")
        if any(a >= b for a, b in zip(cutoffs, cutoffs[1:])):
            raise DegreeBoundError(f"cutoffs must be strictly increasing, got {cutoffs}")
        if cutoffs[0] > self.cap:
            raise DegreeBoundError(
                f"first cutoff {cutoffs[0]} exceeds the grid order {self.cap}"
            )

    @classmethod
    def linear(cls, N: int) -> "MultiresolutionLadder":
        """m_j = j for j = 1..N."""
        return cls(tuple(range(1, N + 1)), N)

    @classmethod
    def dyadic(cls, N: int) -> "MultiresolutionLadder":
        """m_j = 2^(j-1) up to N."""
        cutoffs = []
        m = 1
        while m <= N:
            cutoffs.append(m)
            m *= 2
        return cls(tuple(cutoffs), N)

    @property
    def j0(self) -> int:
        return sum(1 for m in self.cutoffs if m <= self.cap)

    def m(self, j: int) -> int:
        if not 1 <= j <= len(self.cutoffs):
            raise DegreeBoundError(f"level {j} outside 1..{len(self.cutoffs)}")
        return self.cutoffs[j - 1]

    def check_scaling_level(self, j: int) -> None:
        if not 1 <= j <= self.j0:
            raise DegreeBoundError(f"scaling level {j} outside 1..{self.j0}")

    def check_wavelet_level(self, j: int) -> None:
        if not 1 <= j <= self.j0 - 1:
            raise DegreeBoundError(
                f"wavelet level {j} outside 1..{self.j0 - 1} (needs m_(j+1) <= {self.cap})"
            )

    def scaling_band(self, j: int) -> Tuple[int, int]:
        self.check_scaling_level(j)
        return 0, self.m(j)

    def wavelet_band(self, j: int) -> Tuple[int, int]:
        self.check_wavelet_level(j)
        return self.m(j), self.m(j + 1)


@dataclass(frozen=True, eq=False)
class FrameCoefficients:
    """Per-node frame coefficients <f, phi_j(., xi_l)>_X (or psi_j) of one level."""

    level: int
    grid_N: int
    values: np.ndarray
    kind: str = SCALING

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=complex)
        expected = self.grid_N * (2 * self.grid_N + 1)
        if values.shape != (expected,):
            raise LengthMismatchError(
                f"order-{self.grid_N} grid has {expected} nodes, got {values.size} coefficients"
            )
        if self.kind not in (SCALING, WAVELET):
            raise DomainError(f"unknown frame kind {self.kind!r}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


class FrameCheck(NamedTuple):
    lhs: float
    rhs: float

    @property
    def gap(self) -> float:
        return abs(self.lhs - self.rhs)


class MeanValues(NamedTuple):
    phi_mean: float
    psi_mean: float


# ---------------------------------------------------------------------------
# Pointwise kernels
# ---------------------------------------------------------------------------


def scaling_phi(
    ladder: MultiresolutionLadder, j: int, center: SpherePoint, point: SpherePoint
) -> float:
    """phi_j(point, center) = sum_{n < m_j} (2n+1) P_n(point . center)."""
    lo, hi = ladder.scaling_band(j)
    return float(kernel_partial_sum(lo, hi, point.dot(center)))


def wavelet_psi(
    ladder: MultiresolutionLadder, j: int, center: SpherePoint, point: SpherePoint
) -> float:
    """psi_j(point, center) = sum_{m_j <= n < m_(j+1)} (2n+1) P_n(point . center)."""
    lo, hi = ladder.wavelet_band(j)
    return float(kernel_partial_sum(lo, hi, point.dot(center)))


# ---------------------------------------------------------------------------
# Frame analysis / synthesis
# ---------------------------------------------------------------------------


def _check_band_on_grid(grid: SphericalGrid, hi: int) -> None:
    if hi > grid.N:
        raise DegreeBoundError(f"band reaches degree {hi - 1}, grid order is {grid.N}")


def _check_samples(grid: SphericalGrid, samples: SampleVector) -> None:
    if samples.grid_N != grid.N:
        raise LengthMismatchError(
            f"samples belong to an order-{samples.grid_N} grid, not order {grid.N}"
        )


def _band_analyze(grid: SphericalGrid, samples: SampleVector, lo: int, hi: int) -> np.ndarray:
    _check_band_on_grid(grid, hi)
    _check_samples(grid, samples)
    kernel = kernel_partial_sum(lo, hi, node_cosines(grid.points))
    return ordered_sum(kernel * (samples.values * grid.node_weights)[:, None])


def _band_synthesize(
    grid: SphericalGrid, coeffs: FrameCoefficients, points, lo: int, hi: int
) -> np.ndarray:
    _check_band_on_grid(grid, hi)
    if coeffs.grid_N != grid.N:
        raise LengthMismatchError(
            f"frame coefficients belong to an order-{coeffs.grid_N} grid, not order {grid.N}"
        )
    pts = points_array(points)
    kernel = kernel_partial_sum(lo, hi, node_cosines(grid.points, pts))
    return ordered_sum(kernel * (coeffs.values * grid.node_weights)[:, None])


def frame_analyze(
    ladder: MultiresolutionLadder, j: int, grid: SphericalGrid, samples: SampleVector
) -> FrameCoefficients:
    """c_l = <f, phi_j(., xi_l)>_X for every node xi_l.

    For f in V_j this reproduces the samples: c_l = f(xi_l).
    """
    lo, hi = ladder.scaling_band(j)
    values = _band_analyze(grid, samples, lo, hi)
    return FrameCoefficients(j, grid.N, values, SCALING)


def frame_synthesize(
    ladder: MultiresolutionLadder,
    j: int,
    grid: SphericalGrid,
    coeffs: FrameCoefficients,
    points,
) -> np.ndarray:
    """f(xi) = sum_l c_l phi_j(xi, xi_l) mu_N(xi_l) at every point."""
    lo, hi = ladder.scaling_band(j)
    return _band_synthesize(grid, coeffs, points, lo, hi)


def wavelet_analyze(
    ladder: MultiresolutionLadder, j: int, grid: SphericalGrid, samples: SampleVector
) -> FrameCoefficients:
    """c_l = <f, psi_j(., xi_l)>_X; equals f(xi_l) for f in W_j."""
    lo, hi = ladder.wavelet_band(j)
    values = _band_analyze(grid, samples, lo, hi)
    return FrameCoefficients(j, grid.N, values, WAVELET)


def wavelet_synthesize(
    ladder: MultiresolutionLadder,
    j: int,
    grid: SphericalGrid,
    coeffs: FrameCoefficients,
    points,
) -> np.ndarray:
    """f(xi) = sum_l c_l psi_j(xi, xi_l) mu_N(xi_l) at every point."""
    lo, hi = ladder.wavelet_band(j)
    return _band_synthesize(grid, coeffs, points, lo, hi)


# ---------------------------------------------------------------------------
# Projections
# ---------------------------------------------------------------------------


def project_V(ladder: MultiresolutionLadder, j: int, coeffs: CoeffVector) -> CoeffVector:
    """R_j: keep alpha_nk with n < m_j."""
    _, hi = ladder.scaling_band(j)
    mask = layout_degrees(coeffs.max_degree) < hi
    return CoeffVector(coeffs.max_degree, np.where(mask, coeffs.entries, 0.0))


def project_W(ladder: MultiresolutionLadder, j: int, coeffs: CoeffVector) -> CoeffVector:
    """Q_j: keep alpha_nk with m_j <= n < m_(j+1)."""
    lo, hi = ladder.wavelet_band(j)
    if coeffs.max_degree < hi:
        raise DegreeBoundError(
            f"coefficients stop below degree {hi - 1}; Q_{j} needs max_degree >= {hi}"
        )
    degrees = layout_degrees(coeffs.max_degree)
    mask = (degrees >= lo) & (degrees < hi)
    return CoeffVector(coeffs.max_degree, np.where(mask, coeffs.entries, 0.0))


def telescope(ladder: MultiresolutionLadder, j: int, coeffs: CoeffVector) -> CoeffVector:
    """Return R_1 f + sum_{k < j} Q_k f, which equals R_j f."""
    ladder.check_scaling_level(j)
    total = project_V(ladder, 1, coeffs).entries.copy()
    for k in range(1, j):
        total += project_W(ladder, k, coeffs).entries
    return CoeffVector(coeffs.max_degree, total)


# ---------------------------------------------------------------------------
# Frame property checks
# ---------------------------------------------------------------------------


def _frame_energy(grid: SphericalGrid, coeffs: FrameCoefficients) -> float:
    return math.fsum(grid.node_weights * np.abs(coeffs.values) ** 2)


def _outside_band(coeffs: CoeffVector, lo: int, hi: int) -> bool:
    degrees = layout_degrees(coeffs.max_degree)
    stray = coeffs.entries[(degrees < lo) | (degrees >= hi)]
    return bool(np.any(stray != 0))


def tight_frame_check(
    ladder: MultiresolutionLadder, j: int, grid: SphericalGrid, coeffs: CoeffVector
) -> FrameCheck:
    """Compare ||f||^2 with sum_l mu_N(xi_l) |<f, phi_j(., xi_l)>|^2.

    Equality holds for f in V_j.  Inputs outside V_j are measured, not
    rejected; the gap is logged.
    """
    lo, hi = ladder.scaling_band(j)
    samples = synthesize_on_grid(coeffs, grid)
    check = FrameCheck(coeffs.norm() ** 2, _frame_energy(grid, frame_analyze(ladder, j, grid, samples)))
    if _outside_band(coeffs, lo, hi) and check.gap > FRAME_GAP_TOL:
        logger.warning("input leaves V_%d: tight-frame gap %.3e", j, check.gap)
    return check


def wavelet_frame_check(
    ladder: MultiresolutionLadder, j: int, grid: SphericalGrid, coeffs: CoeffVector
) -> FrameCheck:
    """Tight-frame identity for the weighted wavelets on W_j."""
    lo, hi = ladder.wavelet_band(j)
    samples = synthesize_on_grid(coeffs, grid)
    check = FrameCheck(
        coeffs.norm() ** 2, _frame_energy(grid, wavelet_analyze(ladder, j, grid, samples))
    )
    if _outside_band(coeffs, lo, hi) and check.gap > FRAME_GAP_TOL:
        logger.warning("input leaves W_%d: tight-frame gap %.3e", j, check.gap)
    return check


def min_norm_interpolant(
    ladder: MultiresolutionLadder,
    j: int,
    center: SpherePoint,
    wavelet: bool = False,
) -> CoeffVector:
    """Minimal-norm element taking the value 1 at ``center``.

    For V_j this is phi_j(., center) / m_j^2 with norm 1/m_j; with
    ``wavelet=True`` it is psi_j(., center) / (m_(j+1)^2 - m_j^2) in W_j with
    norm 1/sqrt(m_(j+1)^2 - m_j^2).
    """
    lo, hi = ladder.wavelet_band(j) if wavelet else ladder.scaling_band(j)
    values = np.conj(eval_Y_batch(hi, center))
    values[layout_degrees(hi) < lo] = 0.0
    return CoeffVector(hi, values / float(hi * hi - lo * lo))


def phi_mean(
    ladder: MultiresolutionLadder, j: int, grid: SphericalGrid, center: SpherePoint
) -> float:
    """Discrete integral over X of phi_j(., center); equals 1."""
    lo, hi = ladder.scaling_band(j)
    _check_band_on_grid(grid, hi)
    values = kernel_partial_sum(lo, hi, grid.points @ center.as_array())
    return discrete_integral(grid, values).real


def psi_mean(
    ladder: MultiresolutionLadder, j: int, grid: SphericalGrid, center: SpherePoint
) -> float:
    """Discrete integral over X of psi_j(., center); equals 0 (requires m_j > 1)."""
    lo, hi = ladder.wavelet_band(j)
    if lo <= 1:
        raise DegreeBoundError(f"wavelet mean needs m_j > 1, level {j} has m_j = {lo}")
    _check_band_on_grid(grid, hi)
    values = kernel_partial_sum(lo, hi, grid.points @ center.as_array())
    return discrete_integral(grid, values).real


def mean_value_checks(
    ladder: MultiresolutionLadder, j: int, grid: SphericalGrid, center: SpherePoint
) -> MeanValues:
    """Return the discrete means of phi_j and psi_j centered at ``center``."""
    return MeanValues(
        phi_mean(ladder, j, grid, center),
        psi_mean(ladder, j, grid, center),
    )


# ---------------------------------------------------------------------------
# Summation means
# ---------------------------------------------------------------------------


def fejer_mean(grid: SphericalGrid, samples: SampleVector, n: int) -> CoeffVector:
    """(1/n) sum_{m=1..n} S_m f, i.e. alpha_nk scaled by (n - deg)/n."""
    if not 1 <= n <= grid.N:
        raise DegreeBoundError(f"Fejer parameter {n} outside 1..{grid.N}")
    coeffs = analyze(grid, samples, n)
    factors = (n - layout_degrees(n)) / n
    return CoeffVector(n, coeffs.entries * factors)


def vallee_poussin_mean(grid: SphericalGrid, samples: SampleVector, n: int) -> CoeffVector:
    """(1/n) sum_{m=n..2n-1} S_m f.

    Degrees below n are kept, degree d in [n, 2n-1) is scaled by (2n-1-d)/n.
    """
    top = 2 * n - 1
    if n < 1 or top > grid.N:
        raise DegreeBoundError(f"de la Vallee-Poussin parameter {n} needs 1 <= 2n-1 <= {grid.N}")
    coeffs = analyze(grid, samples, top)
    factors = np.minimum(1.0, (top - layout_degrees(top)) / n)
    return CoeffVector(top, coeffs.entries * factors)


def _summation_levels(method: str, n: int) -> Sequence[int]:
    if method == "fejer":
        return range(1, n + 1)
    if method == "vallee_poussin":
        return range(n, 2 * n)
    raise ValueError(f"unknown summation method {method!r}")


def summation_from_frames(
    grid: SphericalGrid,
    samples: SampleVector,
    n: int,
    points,
    method: str = "fejer",
) -> np.ndarray:
    """Evaluate a summation mean through frame data of the ladder m_j = j.

    Each partial sum S_m f is rebuilt as frame_synthesize(frame_analyze(f))
    at level m_j = m; the mean is their plain average.
    """
    levels = _summation_levels(method, n)
    if n < 1 or levels[-1] > grid.N:
        raise DegreeBoundError(f"{method} parameter {n} needs levels 1..{grid.N}")
    ladder = MultiresolutionLadder.linear(grid.N)
    total = np.zeros(points_array(points).shape[0], dtype=complex)
    for level in levels:
        coeffs = frame_analyze(ladder, level, grid, samples)
        total += frame_synthesize(ladder, level, grid, coeffs, points)
    return total / n


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Level-1 scaling frame data plus wavelet frame data of levels 1..j0-1.

    Attributes:
        reconstruction_error: max |R_1 f + sum Q_k f - R_j0 f| over the nodes.
        residual_norm: ||f - R_j0 f||_X (discrete weighted norm).
    """

    ladder: MultiresolutionLadder
    grid: SphericalGrid
    scaling: FrameCoefficients
    wavelets: Tuple[FrameCoefficients, ...]
    reconstruction_error: float
    residual_norm: float

    def levels(self) -> Iterable[FrameCoefficients]:
        yield self.scaling
        yield from self.wavelets

    def reconstruct(self, points) -> np.ndarray:
        """Evaluate R_1 f + sum_k Q_k f at ``points`` from frame data only."""
        total = frame_synthesize(self.ladder, 1, self.grid, self.scaling, points)
        for coeffs in self.wavelets:
            total = total + wavelet_synthesize(self.ladder, coeffs.level, self.grid, coeffs, points)
        return total


def decompose(
    ladder: MultiresolutionLadder,
    grid: SphericalGrid,
    samples: SampleVector,
    top: Optional[int] = None,
) -> Decomposition:
    """Split f into R_1 f and the details Q_1 f, ..., Q_(top-1) f.

    Args:
        ladder: Cutoffs; ``top`` defaults to its j0.
        grid: The nodal grid (order must be at least the top cutoff).
        samples: f on the grid.
        top: Highest scaling level reached by the telescoping sum.
    """
    top = ladder.j0 if top is None else top
    ladder.check_scaling_level(top)
    scaling = frame_analyze(ladder, 1, grid, samples)
    wavelets = tuple(wavelet_analyze(ladder, k, grid, samples) for k in range(1, top))

    projection = frame_analyze(ladder, top, grid, samples).values
    decomposition = Decomposition(ladder, grid, scaling, wavelets, 0.0, 0.0)
    rebuilt = decomposition.reconstruct(grid.points)
    error = float(np.max(np.abs(rebuilt - projection)))
    residual = math.sqrt(math.fsum(grid.node_weights * np.abs(samples.values - projection) ** 2))
    logger.debug(
        "decomposed %d levels on order-%d grid: telescoping error %.3e, residual %.3e",
        top, grid.N, error, residual,
    )
    return Decomposition(ladder, grid, scaling, wavelets, error, residual)
