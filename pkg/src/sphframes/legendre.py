"""Legendre polynomials, Gauss-Legendre roots and Christoffel numbers.

Everything the grid needs on the interval [-1, 1]:

* :func:`legendre_value_and_derivative` / :func:`legendre_table` -- P_n and
  P_n' by the three-term recurrence.
* :func:`legendre_roots` -- roots of P_N by Newton iteration.
* :func:`christoffel_numbers` -- the Gauss-Legendre rule (roots + weights).
* :func:`assoc_legendre_schmidt` / :func:`assoc_legendre_table` -- Schmidt
  semi-normalized associated Legendre functions, no Condon-Shortley phase.
* :func:`lagrange_fundamental` -- the fundamental polynomials of Legendre
  interpolation; their integrals are the Christoffel numbers.

All functions accept scalars or numpy arrays for ``x`` and are pure.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple
from typing import Union

import numpy as np

from .errors import ConvergenceError
from .errors import DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Arguments up to 1 + DOMAIN_SLACK in magnitude are clamped onto [-1, 1].
DOMAIN_SLACK = 1e-12
NEWTON_TOL = 1e-15
MAX_NEWTON_ITER = 100


def _unit_interval(x: ArrayLike) -> np.ndarray:
    """Validate ``x`` against [-1, 1] (with slack) and clamp it."""
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)) or np.any(np.abs(arr) > 1.0 + DOMAIN_SLACK):
        raise DomainError(f"argument outside [-1, 1]: {x!r}")
    return np.clip(arr, -1.0, 1.0)


def _as_output(arr: np.ndarray, like: ArrayLike) -> ArrayLike:
    return float(arr) if np.ndim(like) == 0 else arr


# ---------------------------------------------------------------------------
# Legendre polynomials
# ---------------------------------------------------------------------------


def _legendre_pair(n: int, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # P_{k+1} = ((2k+1) x P_k - k P_{k-1}) / (k+1)
    # P'_{k+1} = P'_{k-1} + (2k+1) P_k  (valid at the endpoints too)
    p_prev = np.ones_like(x)
    d_prev = np.zeros_like(x)
    if n == 0:
        return p_prev, d_prev
    p = x.copy()
    d = np.ones_like(x)
    for k in range(1, n):
        p_next = ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
        d_next = d_prev + (2 * k + 1) * p
        p_prev, p = p, p_next
        d_prev, d = d, d_next
    return p, d


def legendre_value_and_derivative(n: int, x: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """Return ``(P_n(x), P_n'(x))``.

    The recurrence keeps ``P_n(1) == 1`` exactly for every ``n``.

    Args:
        n: Degree, ``n >= 0``.
        x: Point(s) in [-1, 1].

    Raises:
        DomainError: if ``n < 0`` or ``|x| > 1 + 1e-12``.
    """
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    arr = _unit_interval(x)
    p, d = _legendre_pair(n, arr)
    return _as_output(p, x), _as_output(d, x)


def legendre_table(n: int, x: ArrayLike) -> np.ndarray:
    """Return P_0(x), ..., P_n(x) stacked along a new leading axis."""
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    arr = _unit_interval(x)
    table = np.empty((n + 1,) + arr.shape)
    table[0] = 1.0
    if n >= 1:
        table[1] = arr
    for k in range(1, n):
        table[k + 1] = ((2 * k + 1) * arr * table[k] - k * table[k - 1]) / (k + 1)
    return table


# ---------------------------------------------------------------------------
# Gauss-Legendre rule
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss-Legendre rule of order N on [-1, 1].

    ``nodes`` are the roots of P_N in ascending order, ``weights`` the
    matching Christoffel numbers.  Both arrays are read-only.
    """

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.shape != (self.order,) or weights.shape != (self.order,):
            raise DomainError(
                f"rule of order {self.order} needs {self.order} nodes and weights"
            )
        if not np.all(np.abs(nodes) < 1.0):
            raise DomainError("rule nodes must lie inside (-1, 1)")
        if not np.all(np.diff(nodes) > 0.0):
            raise DomainError("rule nodes must be strictly ascending")
        if not np.all(weights > 0.0):
            raise DomainError("rule weights must be positive")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def integrate(self, values: np.ndarray) -> float:
        """Return sum_k A_k g(lambda_k) for ``values[k] = g(lambda_k)``."""
        values = np.asarray(values, dtype=float)
        return math.fsum(self.weights * values)


def legendre_roots(N: int) -> np.ndarray:
    """Return the N roots of P_N in ascending order.

    Newton's method from the asymptotic guesses cos(pi (4k-1) / (4N+2)),
    stopped when every step is below ``NEWTON_TOL``.  The result is
    symmetrized so that ``roots[k] == -roots[N-1-k]`` holds exactly.

    Raises:
        DomainError: if ``N < 1``.
        ConvergenceError: if Newton needs more than ``MAX_NEWTON_ITER`` steps.
    """
    if N < 1:
        raise DomainError(f"rule order must be positive, got {N}")
    k = np.arange(1, N + 1)
    x = np.cos(np.pi * (4 * k - 1) / (4 * N + 2))
    for iteration in range(1, MAX_NEWTON_ITER + 1):
        p, dp = _legendre_pair(N, x)
        step = p / dp
        x = x - step
        if np.max(np.abs(step)) < NEWTON_TOL:
            break
    else:
        raise ConvergenceError(
            f"Newton iteration for P_{N} roots did not converge "
            f"in {MAX_NEWTON_ITER} steps"
        )
    logger.debug("P_%d roots converged after %d Newton steps", N, iteration)
    x = np.sort(x)
    return (x - x[::-1]) / 2.0


def christoffel_numbers(N: int) -> QuadratureRule:
    """Return the N-point Gauss-Legendre rule.

    Weights come from the closed form A_k = 2 / ((1 - lambda_k^2) P_N'(lambda_k)^2),
    which equals the integral of the k-th fundamental polynomial over [-1, 1].
    """
    nodes = legendre_roots(N)
    _, dp = _legendre_pair(N, nodes)
    weights = 2.0 / ((1.0 - nodes) * (1.0 + nodes) * dp * dp)
    weights = (weights + weights[::-1]) / 2.0
    return QuadratureRule(order=N, nodes=nodes, weights=weights)


def lagrange_fundamental(rule: QuadratureRule, j: int, x: ArrayLike) -> ArrayLike:
    """Evaluate the j-th fundamental polynomial l_j^N (``j`` is 1-based).

    l_j^N(x) = prod_{i != j} (x - lambda_i) / (lambda_j - lambda_i), so
    l_j^N(lambda_i) = delta_ij.
    """
    if not 1 <= j <= rule.order:
        raise DomainError(f"index j={j} outside 1..{rule.order}")
    arr = np.asarray(x, dtype=float)
    center = rule.nodes[j - 1]
    value = np.ones_like(arr)
    for i, node in enumerate(rule.nodes, start=1):
        if i != j:
            value = value * (arr - node) / (center - node)
    return _as_output(value, x)


# ---------------------------------------------------------------------------
# Associated Legendre functions (Schmidt semi-normalized)
# ---------------------------------------------------------------------------


def _sin_from_cos(x: np.ndarray) -> np.ndarray:
    return np.sqrt((1.0 - x) * (1.0 + x))


def assoc_legendre_table(m: int, x: ArrayLike) -> np.ndarray:
    """Return P̄_n^k(x) for all 0 <= k <= n < m.

    The result has shape ``(m, m) + x.shape``; entry ``[n, k]`` holds
    P̄_n^k(x) = sqrt((n-k)!/(n+k)!) P_n^k(x) and entries with k > n are zero.
    The sectoral seeds P̄_k^k = sqrt((2k-1)/(2k)) s P̄_{k-1}^{k-1} and the
    normalized upward recurrence in n never form factorial ratios.
    """
    if m < 1:
        raise DomainError(f"table size must be positive, got {m}")
    arr = _unit_interval(x)
    s = _sin_from_cos(arr)
    table = np.zeros((m, m) + arr.shape)
    sectoral = np.ones_like(arr)
    for k in range(m):
        if k > 0:
            sectoral = math.sqrt((2 * k - 1) / (2 * k)) * s * sectoral
        table[k, k] = sectoral
        if k + 1 < m:
            table[k + 1, k] = math.sqrt(2 * k + 1) * arr * sectoral
        for n in range(k + 2, m):
            a = (2 * n - 1) / math.sqrt(n * n - k * k)
            b = math.sqrt(((n - 1) * (n - 1) - k * k) / (n * n - k * k))
            table[n, k] = a * arr * table[n - 1, k] - b * table[n - 2, k]
    return table


def assoc_legendre_schmidt(n: int, k: int, x: ArrayLike) -> ArrayLike:
    """Return the Schmidt semi-normalized value P̄_n^k(x).

    Normalized so that the integral of (P̄_n^k)^2 over [-1, 1] is 2/(2n+1);
    no Condon-Shortley phase.

    Raises:
        DomainError: unless ``0 <= k <= n`` and ``|x| <= 1 + 1e-12``.
    """
    if n < 0 or not 0 <= k <= n:
        raise DomainError(f"invalid associated Legendre index (n={n}, k={k})")
    arr = _unit_interval(x)
    s = _sin_from_cos(arr)
    value = np.ones_like(arr)
    for i in range(1, k + 1):
        value = math.sqrt((2 * i - 1) / (2 * i)) * s * value
    if n == k:
        return _as_output(value, x)
    prev, value = value, math.sqrt(2 * k + 1) * arr * value
    for deg in range(k + 2, n + 1):
        a = (2 * deg - 1) / math.sqrt(deg * deg - k * k)
        b = math.sqrt(((deg - 1) * (deg - 1) - k * k) / (deg * deg - k * k))
        prev, value = value, a * arr * value - b * prev
    return _as_output(value, x)
