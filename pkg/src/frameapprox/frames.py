"""Truncated frames on [0, 1]: a Legendre basis optionally enriched by weighted copies.

The shipped frames are the Legendre orthonormal basis itself and its
enrichment by K weighted elements psi_k = w(x) phi_k(x) with w(x) = log(x).
Elements are ordered enrichments first: indices 0..K-1 are the psi_k and
indices K..N-1 are the polynomials phi_0, ..., phi_{N-K-1}.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .orthopoly import legendre_table

__all__ = [
    "FrameKind",
    "FrameSpec",
    "CoefficientVector",
    "legendre_onb",
    "onb_plus_k",
    "frame_element",
    "element_matrix",
    "synthesize",
    "target_function",
]

# squared L2(0,1) norm of the default weight log(x)
_LOG_NORM_SQ = 2.0


class FrameKind(enum.Enum):
    LEGENDRE_ONB = "legendre_onb"
    ONB_PLUS_K = "onb_plus_k"


@dataclass(frozen=True)
class FrameSpec:
    """A truncated frame of N elements with certified frame bounds.

    A_lower and B_upper bound the frame constants of the full (infinite)
    system the truncation is drawn from, not of the truncation itself.
    """

    kind: FrameKind
    K: int
    N: int
    A_lower: float
    B_upper: float
    normalize_psi: bool = False
    weight: Callable = field(default=np.log, repr=False, compare=False)
    weight_norm_sq: float = _LOG_NORM_SQ

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.K < 0 or self.K > self.N:
            raise ValueError("K must satisfy 0 <= K <= N")
        if self.kind is FrameKind.LEGENDRE_ONB and self.K != 0:
            raise ValueError("a pure basis has K = 0")
        if self.normalize_psi and self.K > 1:
            raise ValueError("normalization is only defined for the single-element enrichment")

    @property
    def max_poly_degree(self) -> int:
        return self.N - self.K - 1


def legendre_onb(N: int) -> FrameSpec:
    """The first N orthonormal shifted Legendre polynomials (A = B = 1)."""
    return FrameSpec(kind=FrameKind.LEGENDRE_ONB, K=0, N=N, A_lower=1.0, B_upper=1.0)


def onb_plus_k(
    N: int,
    K: int,
    normalize_psi: Optional[bool] = None,
    weight: Optional[Callable] = None,
    weight_norm_sq: float = _LOG_NORM_SQ,
) -> FrameSpec:
    """Legendre basis enriched by K weighted elements psi_k = w phi_k.

    With K = 1 the single enrichment is normalized by default, giving frame
    bounds A = 1, B = 1 + ||w||^2 / ||w||^2 = 2 for the log weight; for
    K >= 2 the enrichments are kept unnormalized and B <= 1 + ||w||^2 K^2.
    K = 0 falls back to the pure basis.
    """
    if K == 0:
        return legendre_onb(N)
    if K > N:
        raise ValueError("K must be <= N")
    if normalize_psi is None:
        normalize_psi = K == 1
    if normalize_psi:
        B_upper = 2.0
    else:
        B_upper = 1.0 + weight_norm_sq * K * K
    return FrameSpec(
        kind=FrameKind.ONB_PLUS_K,
        K=K,
        N=N,
        A_lower=1.0,
        B_upper=B_upper,
        normalize_psi=normalize_psi,
        weight=weight if weight is not None else np.log,
        weight_norm_sq=weight_norm_sq,
    )


@dataclass
class CoefficientVector:
    """Coefficients of a function expressed in a truncated frame."""

    values: np.ndarray
    frame: FrameSpec

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.frame.N,):
            raise ValueError("coefficient length must equal frame.N")

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


def element_matrix(frame: FrameSpec, x) -> np.ndarray:
    """All frame elements evaluated at the points x, shape (N, len(x)).

    Evaluation of a weighted element (row j < K) at x <= 0 is a domain error.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x < 0.0) or np.any(x > 1.0):
        raise ValueError("evaluation points must lie in [0, 1]")
    K, N = frame.K, frame.N
    if K > 0 and np.any(x <= 0.0):
        raise ValueError("weighted frame elements are undefined at x = 0")
    max_deg = max(frame.max_poly_degree, K - 1, 0)
    table = legendre_table(max_deg, x)
    out = np.empty((N, x.size))
    if K > 0:
        w = np.asarray(frame.weight(x), dtype=float)
        out[:K] = w[None, :] * table[:K]
        if frame.normalize_psi:
            out[0] /= math.sqrt(frame.weight_norm_sq)
    if N > K:
        out[K:] = table[: N - K]
    return out


def frame_element(frame: FrameSpec, j: int, x):
    """Evaluate frame element j at x (scalar in, scalar out)."""
    if j < 0 or j >= frame.N:
        raise ValueError("element index out of range")
    x_arr = np.asarray(x, dtype=float)
    vals = element_matrix(frame, x_arr.ravel())[j]
    if x_arr.ndim == 0:
        return float(vals[0])
    return vals.reshape(x_arr.shape)


def synthesize(coeffs: CoefficientVector, x):
    """Evaluate the frame expansion sum_j c_j elem_j at the points x."""
    x_arr = np.asarray(x, dtype=float)
    vals = coeffs.values @ element_matrix(coeffs.frame, x_arr.ravel())
    if x_arr.ndim == 0:
        return float(vals[0])
    return vals.reshape(x_arr.shape)


def target_function(x):
    """Benchmark target exp(x) + log(x) cos(x), singular at x = 0."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr <= 0.0):
        raise ValueError("target function requires x > 0")
    vals = np.exp(x_arr) + np.log(x_arr) * np.cos(x_arr)
    if x_arr.ndim == 0:
        return float(vals)
    return vals
