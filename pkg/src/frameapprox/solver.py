"""Truncated-SVD least squares in a frame, and verification of its error bounds.

Regularization discards every singular value at or below the cutoff
epsilon; the surviving part of the pseudoinverse is applied to the data.
The bound verifiers check the a-priori inequalities that make this
procedure stable: for any comparison coefficient vector z,

    ||f - A f||  <=  ||f - T z|| + kappa ||f - T z||_M + eps lambda ||z||
    ||x_eps||    <=  (1 / eps) ||f - T z||_M + ||z||

with the first specializing to (1 + sqrt(B) kappa) ||f - T z|| + eps
lambda ||z|| when the data are basis coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional, Union

import numpy as np

from .frames import CoefficientVector, FrameSpec, element_matrix, synthesize
from .gram import GramSystem, build_system
from .orthopoly import QuadratureRule, hp_log_quadrature
from .sampling import DataVector, SamplingScheme, SchemeFamily, SchemeKind, sample

__all__ = [
    "RegularizedSolution",
    "Approximant",
    "BoundCheck",
    "truncated_svd_solve",
    "approximate",
    "error_report",
    "ErrorReport",
    "verify_error_bound",
    "verify_coefficient_bound",
    "function_l2_norm",
]

DEFAULT_EPSILON = 1e-13


@dataclass
class RegularizedSolution:
    """Coefficients produced by a truncated-SVD solve.

    `kept_rank` counts the singular values strictly above the cutoff;
    the coefficient vector lies in the span of their right singular
    vectors, so it is orthogonal to every discarded direction.
    """

    coefficients: CoefficientVector
    epsilon: float
    kept_rank: int
    residual_discrete: float
    system: GramSystem

    @property
    def kept(self) -> np.ndarray:
        return np.arange(self.kept_rank)


@dataclass
class Approximant:
    """A callable frame expansion produced by the approximation pipeline."""

    solution: RegularizedSolution
    frame: FrameSpec

    def __call__(self, x):
        return synthesize(self.solution.coefficients, x)


class BoundCheck(NamedTuple):
    holds: bool
    slack: float
    lhs: float
    rhs: float


def truncated_svd_solve(
    system: GramSystem,
    y: Union[DataVector, np.ndarray],
    epsilon: float,
) -> RegularizedSolution:
    """Solve min ||G x - y|| keeping only singular values above epsilon."""
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    values = y.values if isinstance(y, DataVector) else np.asarray(y, dtype=float)
    if values.shape != (system.M,):
        raise ValueError("data length must equal system row count")
    s = system.singular_values
    kept_rank = int(np.count_nonzero(s > epsilon))
    coeffs = np.zeros(system.N)
    if kept_rank > 0:
        projected = system.U[:, :kept_rank].T @ values
        coeffs = system.Vt[:kept_rank].T @ (projected / s[:kept_rank])
    residual = float(np.linalg.norm(system.matrix @ coeffs - values))
    frame = system.frame
    if frame is None:
        frame = _anonymous_frame(system.N)
    return RegularizedSolution(
        coefficients=CoefficientVector(values=coeffs, frame=frame),
        epsilon=epsilon,
        kept_rank=kept_rank,
        residual_discrete=residual,
        system=system,
    )


def _anonymous_frame(N: int) -> FrameSpec:
    from .frames import legendre_onb

    return legendre_onb(N)


def approximate(
    f,
    frame: FrameSpec,
    scheme: Union[SamplingScheme, SchemeFamily],
    M: Optional[int] = None,
    N: Optional[int] = None,
    epsilon: float = DEFAULT_EPSILON,
) -> Approximant:
    """Sample f, build the frame system, and solve with truncation at epsilon."""
    if isinstance(scheme, SchemeFamily):
        if M is None:
            raise ValueError("M is required when a scheme family is given")
        scheme = scheme.realize(M)
    system = build_system(frame, scheme, M=M, N=N)
    data = sample(scheme, f)
    system.rhs = data.values
    solution = truncated_svd_solve(system, data, epsilon)
    return Approximant(solution=solution, frame=frame)


@dataclass
class ErrorReport:
    """Pointwise errors at probe points plus solve-quality summaries."""

    probes: np.ndarray
    errors: np.ndarray
    max_error: float
    residual_discrete: float
    coefficient_norm: float


def error_report(approx: Approximant, f, probe_points) -> ErrorReport:
    """Absolute errors |f - A f| at the probe points."""
    probes = np.atleast_1d(np.asarray(probe_points, dtype=float))
    errors = np.abs(np.asarray(f(probes), dtype=float) - approx(probes))
    sol = approx.solution
    return ErrorReport(
        probes=probes,
        errors=errors,
        max_error=float(np.max(errors)),
        residual_discrete=sol.residual_discrete,
        coefficient_norm=sol.coefficients.norm(),
    )


@lru_cache(maxsize=64)
def _verification_rule(N: int) -> QuadratureRule:
    # per-cell order scaled to N keeps products of frame elements at
    # per-cell exactness while still resolving the log singularity
    return hp_log_quadrature(levels=40, order=max(32, N + 12))


def function_l2_norm(f, rule: Optional[QuadratureRule] = None) -> float:
    """L2(0, 1) norm of a callable, by default on the singularity-graded rule."""
    if rule is None:
        rule = _verification_rule(32)
    vals = np.asarray(f(rule.nodes), dtype=float)
    return float(np.sqrt(rule.weights @ (vals * vals)))


def _comparison_norms(system: GramSystem, f, z: np.ndarray, rule: QuadratureRule):
    """Continuous and discrete norms of f - T z, plus f at the rule nodes."""
    fvals = np.asarray(f(rule.nodes), dtype=float)
    elems = element_matrix(system.frame, rule.nodes)
    diff = fvals - z @ elems
    cont = float(np.sqrt(rule.weights @ (diff * diff)))
    y_f = sample(system.scheme, f).values
    disc = float(np.linalg.norm(y_f - system.matrix @ z))
    return cont, disc, fvals


def verify_error_bound(
    approx: Approximant,
    f,
    z,
    kappa: float,
    lam: float,
    slack_tol: float = 0.0,
) -> BoundCheck:
    """Check the approximation error bound against a comparison vector z.

    For point-value data the right-hand side is ||f - Tz|| +
    kappa ||f - Tz||_M + eps lambda ||z||; for basis-coefficient data it
    is the sharper (1 + sqrt(B) kappa) ||f - Tz|| + eps lambda ||z||.
    """
    sol = approx.solution
    if sol.epsilon <= 0:
        raise ValueError("bound verification requires epsilon > 0")
    z = np.asarray(z, dtype=float)
    if z.shape != (sol.system.N,):
        raise ValueError("comparison vector length must equal the frame size")
    rule = _verification_rule(sol.system.N)
    cont, disc, fvals = _comparison_norms(sol.system, f, z, rule)
    avals = synthesize(sol.coefficients, rule.nodes)
    lhs = float(np.sqrt(rule.weights @ ((fvals - avals) ** 2)))
    eps_term = sol.epsilon * lam * float(np.linalg.norm(z))
    if sol.system.scheme.kind is SchemeKind.BASIS_INNER_PRODUCTS:
        rhs = (1.0 + np.sqrt(approx.frame.B_upper) * kappa) * cont + eps_term
    else:
        rhs = cont + kappa * disc + eps_term
    slack = rhs - lhs
    return BoundCheck(holds=lhs <= rhs + slack_tol, slack=slack, lhs=lhs, rhs=float(rhs))


def verify_coefficient_bound(
    solution: RegularizedSolution,
    f,
    z,
    slack_tol: float = 0.0,
) -> BoundCheck:
    """Check ||x_eps|| <= (1 / eps) ||f - Tz||_M + ||z||."""
    if solution.epsilon <= 0:
        raise ValueError("bound verification requires epsilon > 0")
    z = np.asarray(z, dtype=float)
    if z.shape != (solution.system.N,):
        raise ValueError("comparison vector length must equal the frame size")
    y_f = sample(solution.system.scheme, f).values
    disc = float(np.linalg.norm(y_f - solution.system.matrix @ z))
    lhs = solution.coefficients.norm()
    rhs = disc / solution.epsilon + float(np.linalg.norm(z))
    slack = rhs - lhs
    return BoundCheck(holds=lhs <= rhs + slack_tol, slack=slack, lhs=lhs, rhs=rhs)
