"""Shifted Legendre polynomials, point families, and quadrature rules on [0, 1]."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "QuadratureRule",
    "NodeKind",
    "NodeFamily",
    "legendre_shifted",
    "legendre_table",
    "chebyshev_nodes",
    "gauss_legendre_rule",
    "equispaced_nodes",
    "hp_log_quadrature",
]


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a quadrature rule on [0, 1].

    Nodes are strictly increasing and lie in [0, 1]; weights are positive.
    """

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.ndim != 1 or weights.shape != nodes.shape:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if nodes.size == 0:
            raise ValueError("empty quadrature rule")
        if nodes[0] < 0.0 or nodes[-1] > 1.0:
            raise ValueError("nodes must lie in [0, 1]")
        if np.any(np.diff(nodes) <= 0.0):
            raise ValueError("nodes must be strictly increasing")
        if np.any(weights <= 0.0):
            raise ValueError("weights must be positive")

    @property
    def size(self) -> int:
        return self.nodes.size

    def integrate(self, f) -> float:
        """Apply the rule to a callable f vectorized over the nodes."""
        vals = np.broadcast_to(np.asarray(f(self.nodes), dtype=float), self.nodes.shape)
        return float(self.weights @ vals)


class NodeKind(enum.Enum):
    CHEBYSHEV = "chebyshev"
    GAUSS_LEGENDRE = "legendre"
    EQUISPACED = "equispaced"


@dataclass(frozen=True)
class NodeFamily:
    """A named family of M points in (0, 1)."""

    kind: NodeKind
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")

    def nodes(self) -> np.ndarray:
        if self.kind is NodeKind.CHEBYSHEV:
            return chebyshev_nodes(self.count)
        if self.kind is NodeKind.GAUSS_LEGENDRE:
            return gauss_legendre_rule(self.count).nodes
        return equispaced_nodes(self.count)


def legendre_table(max_degree: int, x) -> np.ndarray:
    """Table of orthonormal shifted Legendre values on [0, 1].

    Returns an array of shape (max_degree + 1, len(x)) whose row n holds
    sqrt(2n + 1) * P_n(2x - 1), an orthonormal family in L2(0, 1).
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    t = 2.0 * x - 1.0
    table = np.empty((max_degree + 1, x.size))
    table[0] = 1.0
    if max_degree >= 1:
        table[1] = t
    for n in range(1, max_degree):
        # three-term recurrence for P_{n+1} in the unnormalized convention
        table[n + 1] = ((2 * n + 1) * t * table[n] - n * table[n - 1]) / (n + 1)
    scale = np.sqrt(2.0 * np.arange(max_degree + 1) + 1.0)
    return table * scale[:, None]


def legendre_shifted(n: int, x):
    """Orthonormal shifted Legendre polynomial sqrt(2n+1) P_n(2x-1)."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    x_arr = np.asarray(x, dtype=float)
    vals = legendre_table(n, x_arr.ravel())[n]
    if x_arr.ndim == 0:
        return float(vals[0])
    return vals.reshape(x_arr.shape)


def chebyshev_nodes(M: int) -> np.ndarray:
    """M Chebyshev points (cos((2m-1) pi / (2M)) + 1) / 2, sorted increasing."""
    if M < 1:
        raise ValueError("M must be >= 1")
    m = np.arange(1, M + 1)
    nodes = (np.cos((2 * m - 1) * np.pi / (2 * M)) + 1.0) / 2.0
    return np.sort(nodes)


@lru_cache(maxsize=256)
def _gauss_legendre_cached(M: int):
    t, w = np.polynomial.legendre.leggauss(M)
    nodes = (t + 1.0) / 2.0
    weights = w / 2.0
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre_rule(M: int) -> QuadratureRule:
    """M-point Gauss-Legendre rule on [0, 1], exact for degree <= 2M - 1."""
    if M < 1:
        raise ValueError("M must be >= 1")
    nodes, weights = _gauss_legendre_cached(M)
    return QuadratureRule(nodes=nodes.copy(), weights=weights.copy())


def equispaced_nodes(M: int) -> np.ndarray:
    """M midpoints (m - 1/2) / M of the uniform partition of [0, 1]."""
    if M < 1:
        raise ValueError("M must be >= 1")
    return (np.arange(1, M + 1) - 0.5) / M


def hp_log_quadrature(levels: int = 40, order: int = 10) -> QuadratureRule:
    """Composite Gauss-Legendre rule on a geometric subdivision toward 0.

    The cells are [0, 2^-levels], [2^-levels, 2^-(levels-1)], ..., [1/2, 1],
    each carrying an `order`-point Gauss-Legendre rule.  Integrands with a
    logarithmic singularity at 0 (times a polynomial) are resolved to near
    machine precision; smooth integrands are handled by per-cell exactness.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if order < 1:
        raise ValueError("order must be >= 1")
    base_nodes, base_weights = _gauss_legendre_cached(order)
    edges = np.concatenate(([0.0], np.ldexp(1.0, -np.arange(levels, -1, -1))))
    nodes = []
    weights = []
    for a, b in zip(edges[:-1], edges[1:]):
        h = b - a
        nodes.append(a + h * base_nodes)
        weights.append(h * base_weights)
    return QuadratureRule(nodes=np.concatenate(nodes), weights=np.concatenate(weights))
