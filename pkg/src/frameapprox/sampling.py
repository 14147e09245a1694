"""Sampling operators: basis inner products and weighted point values.

A sampling scheme turns a function on (0, 1] into a data vector of M
numbers.  Point schemes return s_m * f(x_m) with per-node scale factors
s_m chosen so that the discrete norm mimics the continuous L2 norm where
possible; the inner-product scheme returns coefficients against the
Legendre orthonormal basis, evaluated by quadrature.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .orthopoly import (
    NodeKind,
    QuadratureRule,
    chebyshev_nodes,
    equispaced_nodes,
    gauss_legendre_rule,
    hp_log_quadrature,
    legendre_table,
)
from .frames import FrameSpec

__all__ = [
    "SchemeKind",
    "SamplingScheme",
    "SchemeFamily",
    "DataVector",
    "inner_product_scheme",
    "legendre_point_scheme",
    "equispaced_point_scheme",
    "chebyshev_point_scheme",
    "inner_products",
    "legendre_points",
    "equispaced_points",
    "chebyshev_points",
    "sample",
    "discrete_norm",
    "richness_estimate",
]


class SchemeKind(enum.Enum):
    BASIS_INNER_PRODUCTS = "inner_products"
    WEIGHTED_POINT_VALUES = "point_values"


@dataclass(frozen=True)
class SamplingScheme:
    """M sampling functionals plus certified discrete-norm constants.

    For point schemes `nodes` and `scales` hold the x_m and s_m; for the
    inner-product scheme `rule` holds the quadrature used to evaluate the
    basis coefficients.  A_prime/B_prime are the nominal constants of the
    associated discrete seminorm (None when the scheme is unnormalized).
    """

    kind: SchemeKind
    M: int
    nodes: Optional[np.ndarray] = None
    scales: Optional[np.ndarray] = None
    rule: Optional[QuadratureRule] = None
    node_kind: Optional[NodeKind] = None
    A_prime: Optional[float] = None
    B_prime: Optional[float] = None

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("M must be >= 1")
        if self.kind is SchemeKind.WEIGHTED_POINT_VALUES:
            if self.nodes is None or self.scales is None:
                raise ValueError("point scheme requires nodes and scales")
            if len(self.nodes) != self.M or len(self.scales) != self.M:
                raise ValueError("nodes and scales must have length M")
        else:
            if self.rule is None:
                raise ValueError("inner-product scheme requires a quadrature rule")


@dataclass
class DataVector:
    """Sampled data together with the scheme that produced it."""

    values: np.ndarray
    scheme: SamplingScheme

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.scheme.M,):
            raise ValueError("data length must equal scheme.M")

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


def _default_inner_rule(M: int) -> QuadratureRule:
    # per-cell order grows with M so products of degree-(M-1) coefficients
    # against degree <= M polynomials stay at per-cell exactness
    return hp_log_quadrature(levels=40, order=max(12, M + 12))


def inner_product_scheme(M: int, rule: Optional[QuadratureRule] = None) -> SamplingScheme:
    """Coefficients against the first M orthonormal Legendre polynomials.

    The default quadrature resolves both smooth integrands and integrands
    with a log singularity at 0.  A = B = 1 for the associated seminorm.
    """
    if rule is None:
        rule = _default_inner_rule(M)
    return SamplingScheme(
        kind=SchemeKind.BASIS_INNER_PRODUCTS,
        M=M,
        rule=rule,
        A_prime=1.0,
        B_prime=1.0,
    )


def legendre_point_scheme(M: int) -> SamplingScheme:
    """Gauss-Legendre points with square-root weight scaling (A' = B' = 1)."""
    rule = gauss_legendre_rule(M)
    return SamplingScheme(
        kind=SchemeKind.WEIGHTED_POINT_VALUES,
        M=M,
        nodes=rule.nodes,
        scales=np.sqrt(rule.weights),
        node_kind=NodeKind.GAUSS_LEGENDRE,
        A_prime=1.0,
        B_prime=1.0,
    )


def equispaced_point_scheme(M: int) -> SamplingScheme:
    """Midpoints of the uniform partition, scaled by sqrt(1/M) (A' = B' = 1)."""
    return SamplingScheme(
        kind=SchemeKind.WEIGHTED_POINT_VALUES,
        M=M,
        nodes=equispaced_nodes(M),
        scales=np.full(M, 1.0 / np.sqrt(M)),
        node_kind=NodeKind.EQUISPACED,
        A_prime=1.0,
        B_prime=1.0,
    )


def chebyshev_point_scheme(M: int, weighted: bool = False) -> SamplingScheme:
    """Chebyshev points, plain by default or with Gauss-Chebyshev scaling.

    The plain variant returns raw point values (no normalized discrete
    norm, so A'/B' are undefined); the weighted variant scales by the
    square roots of the Gauss-Chebyshev quadrature weights, which makes
    the discrete norm consistent with L2(0, 1) as M grows.
    """
    nodes = chebyshev_nodes(M)
    if not weighted:
        return SamplingScheme(
            kind=SchemeKind.WEIGHTED_POINT_VALUES,
            M=M,
            nodes=nodes,
            scales=np.ones(M),
            node_kind=NodeKind.CHEBYSHEV,
        )
    t = 2.0 * nodes - 1.0
    weights = np.pi * np.sqrt(1.0 - t * t) / (2.0 * M)
    return SamplingScheme(
        kind=SchemeKind.WEIGHTED_POINT_VALUES,
        M=M,
        nodes=nodes,
        scales=np.sqrt(weights),
        node_kind=NodeKind.CHEBYSHEV,
        A_prime=1.0,
        B_prime=1.0,
    )


@dataclass(frozen=True)
class SchemeFamily:
    """A rule M -> SamplingScheme, used by sweeps that vary the data size."""

    name: str
    factory: Callable[[int], SamplingScheme] = field(compare=False)

    def realize(self, M: int) -> SamplingScheme:
        return self.factory(M)


def inner_products() -> SchemeFamily:
    return SchemeFamily(name="inner_products", factory=inner_product_scheme)


def legendre_points() -> SchemeFamily:
    return SchemeFamily(name="legendre_points", factory=legendre_point_scheme)


def equispaced_points() -> SchemeFamily:
    return SchemeFamily(name="equispaced_points", factory=equispaced_point_scheme)


def chebyshev_points(weighted: bool = False) -> SchemeFamily:
    name = "chebyshev_points_weighted" if weighted else "chebyshev_points"
    return SchemeFamily(name=name, factory=lambda M: chebyshev_point_scheme(M, weighted))


def _evaluate(f, x: np.ndarray) -> np.ndarray:
    vals = np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)
    if not np.all(np.isfinite(vals)):
        raise ValueError("function evaluation produced non-finite samples")
    return vals


def sample(scheme: SamplingScheme, f) -> DataVector:
    """Apply the M sampling functionals to a callable f."""
    if scheme.kind is SchemeKind.WEIGHTED_POINT_VALUES:
        values = scheme.scales * _evaluate(f, scheme.nodes)
    else:
        rule = scheme.rule
        fw = rule.weights * _evaluate(f, rule.nodes)
        basis = legendre_table(scheme.M - 1, rule.nodes)
        values = basis @ fw
    return DataVector(values=values, scheme=scheme)


def discrete_norm(scheme: SamplingScheme, f) -> float:
    """Euclidean norm of the sample vector of f."""
    return sample(scheme, f).norm()


def richness_estimate(scheme: SamplingScheme, frame: FrameSpec, N: int) -> float:
    """Lower discrete-norm constant of the scheme over the span of the frame.

    Returns the smallest value of ||g||_M^2 over functions g in the span
    of the first N frame elements with unit L2 norm: the smallest
    generalized eigenvalue of the pair (G* G, Gram).  Requires M >= N.
    """
    from . import gram  # local import to avoid a module cycle

    if N < 1 or N > frame.N:
        raise ValueError("N must satisfy 1 <= N <= frame.N")
    if scheme.M < N:
        raise ValueError("richness estimate requires scheme.M >= N")
    sub = _subframe(frame, N)
    system = gram.build_system(sub, scheme)
    factor = gram.build_gram_factor(sub, N)
    return _richness_from_matrices(system.matrix, factor.matrix)


def _richness_from_matrices(G: np.ndarray, H: np.ndarray) -> float:
    import scipy.linalg

    R = np.linalg.qr(H, mode="r")
    diag = np.abs(np.diag(R))
    if np.min(diag) <= np.max(diag) * 1e3 * np.finfo(float).eps:
        raise np.linalg.LinAlgError("frame Gram numerically rank deficient")
    X = scipy.linalg.solve_triangular(R, G.T, trans="T", lower=False).T
    smallest = np.linalg.svd(X, compute_uv=False)[-1]
    return float(smallest**2)


def _subframe(frame: FrameSpec, N: int) -> FrameSpec:
    if N == frame.N:
        return frame
    from dataclasses import replace

    return replace(frame, N=N, K=min(frame.K, N))
