"""Orthonormal spherical harmonics and reproducing kernels.

Y_nk(theta, phi) = sqrt(2n+1) P̄_n^{|k|}(cos theta) e^{i k phi},  |k| <= n,

orthonormal for the surface measure of total mass 1.  Vectors of harmonics
use the flat layout ``n^2 + n + k``: (0,0), (1,-1), (1,0), (1,1), (2,-2), ...
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator
from typing import Tuple

import numpy as np

from .errors import DomainError
from .grid import SphericalGrid
from .grid import SpherePoint
from .grid import points_array
from .legendre import assoc_legendre_schmidt
from .legendre import assoc_legendre_table
from .legendre import legendre_table
from .legendre import legendre_value_and_derivative

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HarmonicIndex:
    """Degree/order pair (n, k) with |k| <= n."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 0 or abs(self.k) > self.n:
            raise DomainError(f"invalid harmonic index (n={self.n}, k={self.k})")

    @property
    def flat(self) -> int:
        """Position in the flat coefficient layout."""
        return self.n * self.n + self.n + self.k

    @classmethod
    def from_flat(cls, position: int) -> "HarmonicIndex":
        if position < 0:
            raise DomainError(f"negative layout position {position}")
        n = math.isqrt(position)
        return cls(n, position - n * n - n)


def flat_index(n: int, k: int) -> int:
    return HarmonicIndex(n, k).flat


def index_pairs(m: int) -> Iterator[Tuple[int, int]]:
    """Yield (n, k) for all n < m in flat layout order."""
    for n in range(m):
        for k in range(-n, n + 1):
            yield n, k


def layout_degrees(m: int) -> np.ndarray:
    """Degree n of every position of a length-m^2 coefficient vector."""
    n = np.arange(m)
    return np.repeat(n, 2 * n + 1)


# ---------------------------------------------------------------------------
# Point evaluation
# ---------------------------------------------------------------------------


def eval_Y(idx: HarmonicIndex, point: SpherePoint) -> complex:
    """Return Y_nk(point).

    Y_{n,-k} is the exact complex conjugate of Y_{n,k}: both share the same
    real factors and differ only in the sign of the imaginary part.
    """
    k = abs(idx.k)
    radial = math.sqrt(2 * idx.n + 1) * assoc_legendre_schmidt(idx.n, k, point.z)
    if k == 0:
        return complex(radial, 0.0)
    angle = k * point.phi
    re = radial * math.cos(angle)
    im = radial * math.sin(angle)
    return complex(re, im if idx.k > 0 else -im)


def _harmonics_from_angles(m: int, cos_theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    table = assoc_legendre_table(m, cos_theta)
    out = np.zeros((cos_theta.shape[0], m * m), dtype=complex)
    real = out.real
    imag = out.imag
    for k in range(m):
        if k > 0:
            c = np.cos(k * phi)
            s = np.sin(k * phi)
        for n in range(k, m):
            radial = math.sqrt(2 * n + 1) * table[n, k]
            center = n * n + n
            if k == 0:
                real[:, center] = radial
                continue
            re = radial * c
            im = radial * s
            real[:, center + k] = re
            imag[:, center + k] = im
            real[:, center - k] = re
            imag[:, center - k] = -im
    return out


def harmonic_matrix(m: int, points) -> np.ndarray:
    """Return the (P, m^2) matrix of Y_nk at ``points`` (flat layout columns)."""
    if m < 1:
        raise DomainError(f"max degree must be positive, got {m}")
    pts = points_array(points)
    cos_theta = np.clip(pts[:, 2], -1.0, 1.0)
    phi = np.arctan2(pts[:, 1], pts[:, 0])
    return _harmonics_from_angles(m, cos_theta, phi)


def grid_harmonic_matrix(grid: SphericalGrid, m: int) -> np.ndarray:
    """Like :func:`harmonic_matrix` on the grid nodes, from the exact node angles."""
    if m < 1:
        raise DomainError(f"max degree must be positive, got {m}")
    cos_theta = np.repeat(grid.rule.nodes, grid.n_phi)
    return _harmonics_from_angles(m, cos_theta, grid.node_phis())


def eval_Y_batch(m: int, point: SpherePoint) -> np.ndarray:
    """Return all Y_nk(point) for n < m in flat layout, using shared recurrences."""
    return harmonic_matrix(m, [point])[0]


# ---------------------------------------------------------------------------
# Reproducing kernels
# ---------------------------------------------------------------------------


def kernel_K(n: int, xi: SpherePoint, eta: SpherePoint) -> float:
    """Return K_n(xi, eta) = (2n+1) P_n(xi . eta)."""
    p, _ = legendre_value_and_derivative(n, xi.dot(eta))
    return (2 * n + 1) * p


def kernel_partial_sum(lo: int, hi: int, t) -> np.ndarray:
    """Return sum_{lo <= n < hi} (2n+1) P_n(t) for cosines ``t`` (clamped).

    This is the kernel form of phi_j (lo = 0, hi = m_j) and of
    psi_j (lo = m_j, hi = m_{j+1}).
    """
    t = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
    if hi <= lo:
        return np.zeros_like(t)
    table = legendre_table(hi - 1, t)
    acc = np.zeros_like(t)
    for n in range(lo, hi):
        acc += (2 * n + 1) * table[n]
    return acc
