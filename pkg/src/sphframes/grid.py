"""Gauss-Legendre x equiangular nodal grid on the sphere.

The grid of order N consists of the L = N(2N+1) nodes

    z_kj = (theta_k, phi_j) = (arccos lambda_k, 2 pi j / (2N+1)),
    k = 1..N, j = 0..2N,

where lambda_k are the ascending roots of P_N, and carries the discrete
measure mu_N(z_kj) = A_k / (2(2N+1)) built from the Christoffel numbers A_k.

Canonical node order
--------------------
Row-major with k outer and j inner, both ascending: flat position
``p = (k - 1)(2N + 1) + j``.  Every vector and matrix row in the package
follows it.

Deterministic summation
-----------------------
Discrete integrals are reduced by :func:`ordered_sum`: a sequential
accumulation over the leading axis in canonical node order using elementwise
numpy additions only (no BLAS), so results are bit-stable across runs and
thread counts.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List
from typing import Tuple

import numpy as np

from .errors import DomainError
from .errors import LengthMismatchError
from .legendre import QuadratureRule
from .legendre import christoffel_numbers

logger = logging.getLogger(__name__)

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class SpherePoint:
    """A point on the unit sphere S^2 given by its Cartesian coordinates."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        norm = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if abs(norm - 1.0) > UNIT_TOL:
            raise DomainError(f"point ({self.x}, {self.y}, {self.z}) is not on S^2")

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "SpherePoint":
        """Build (sin t cos p, sin t sin p, cos t) from colatitude/longitude."""
        st = math.sin(theta)
        return cls(st * math.cos(phi), st * math.sin(phi), math.cos(theta))

    @classmethod
    def from_vector(cls, vector) -> "SpherePoint":
        """Normalize an arbitrary non-zero 3-vector onto the sphere."""
        v = np.asarray(vector, dtype=float)
        norm = float(np.linalg.norm(v))
        if v.shape != (3,) or norm == 0.0:
            raise DomainError(f"cannot project {vector!r} onto S^2")
        v = v / norm
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @property
    def theta(self) -> float:
        return math.acos(min(1.0, max(-1.0, self.z)))

    @property
    def phi(self) -> float:
        angle = math.atan2(self.y, self.x)
        return angle + 2.0 * math.pi if angle < 0.0 else angle

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def dot(self, other: "SpherePoint") -> float:
        """Inner product xi . eta clamped to [-1, 1]."""
        t = self.x * other.x + self.y * other.y + self.z * other.z
        return min(1.0, max(-1.0, t))


def points_array(points) -> np.ndarray:
    """Stack SpherePoints (or an (P, 3) array) into a float array of shape (P, 3)."""
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=float)
    else:
        arr = np.array([p.as_array() for p in points], dtype=float).reshape(-1, 3)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise DomainError(f"expected an array of 3-vectors, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class SphericalGrid:
    """The nodal set X (angles) and X' (Cartesian) with weights mu_N.

    Attributes:
        N: Grid order.
        rule: The underlying Gauss-Legendre rule.
        thetas: N colatitudes arccos(lambda_k), descending.
        phis: 2N+1 longitudes 2 pi j / (2N+1).
        node_weights: L weights mu_N in canonical node order.
        points: (L, 3) Cartesian nodes in canonical node order.
    """

    N: int
    rule: QuadratureRule
    thetas: np.ndarray
    phis: np.ndarray
    node_weights: np.ndarray
    points: np.ndarray

    @property
    def size(self) -> int:
        """Number of nodes L = N(2N+1)."""
        return self.N * (2 * self.N + 1)

    @property
    def n_phi(self) -> int:
        return 2 * self.N + 1

    def node_index(self, k: int, j: int) -> int:
        """Flat canonical position of node (k, j), k 1-based, j 0-based."""
        if not (1 <= k <= self.N and 0 <= j <= 2 * self.N):
            raise DomainError(f"node ({k}, {j}) outside the order-{self.N} grid")
        return (k - 1) * self.n_phi + j

    def node_label(self, p: int) -> Tuple[int, int]:
        """Inverse of :meth:`node_index`."""
        if not 0 <= p < self.size:
            raise DomainError(f"node position {p} outside 0..{self.size - 1}")
        row, j = divmod(p, self.n_phi)
        return row + 1, j

    def node_point(self, p: int) -> SpherePoint:
        x, y, z = self.points[p]
        return SpherePoint(float(x), float(y), float(z))

    def node_phis(self) -> np.ndarray:
        """Longitude of every node in canonical order."""
        return np.tile(self.phis, self.N)


def build_grid(N: int) -> SphericalGrid:
    """Construct the order-N grid.

    Raises:
        DomainError: if ``N < 1``.
        ConvergenceError: propagated from root finding.
    """
    if N < 1:
        raise DomainError(f"grid order must be positive, got {N}")
    rule = christoffel_numbers(N)
    n_phi = 2 * N + 1
    thetas = np.arccos(rule.nodes)
    phis = 2.0 * np.pi * np.arange(n_phi) / n_phi
    weights = np.repeat(rule.weights / (2.0 * n_phi), n_phi)

    st = np.sin(thetas)[:, None]
    points = np.stack(
        [
            st * np.cos(phis)[None, :],
            st * np.sin(phis)[None, :],
            np.broadcast_to(rule.nodes[:, None], (N, n_phi)),
        ],
        axis=-1,
    ).reshape(-1, 3)

    for arr in (thetas, phis, weights, points):
        arr.setflags(write=False)
    logger.debug("built order-%d grid with %d nodes", N, weights.size)
    return SphericalGrid(
        N=N,
        rule=rule,
        thetas=thetas,
        phis=phis,
        node_weights=weights,
        points=points,
    )


def to_cartesian(grid: SphericalGrid) -> List[SpherePoint]:
    """Return the L nodes of X' as SpherePoints in canonical order."""
    return [grid.node_point(p) for p in range(grid.size)]


def ordered_sum(terms: np.ndarray) -> np.ndarray:
    """Sum ``terms`` over axis 0 by sequential accumulation.

    Row 0 is added first, then row 1, and so on; the reduction tree is fixed,
    independent of numpy's pairwise summation and of BLAS threading.
    """
    terms = np.asarray(terms)
    if terms.shape[0] == 0:
        return np.zeros(terms.shape[1:], dtype=terms.dtype)
    acc = np.array(terms[0], copy=True)
    for row in terms[1:]:
        acc += row
    return acc


def discrete_integral(grid: SphericalGrid, samples) -> complex:
    """Return sum_{k,j} f(z_kj) mu_N(z_kj).

    Args:
        grid: The nodal grid.
        samples: A SampleVector or a length-L array in canonical order.

    Raises:
        LengthMismatchError: if the sample count is not L.
    """
    values = np.asarray(getattr(samples, "values", samples), dtype=complex)
    if values.shape != (grid.size,):
        raise LengthMismatchError(
            f"expected {grid.size} samples for the order-{grid.N} grid, "
            f"got {values.shape[0] if values.ndim else 0}"
        )
    return complex(ordered_sum(values * grid.node_weights))
