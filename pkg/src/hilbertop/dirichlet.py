"""Coefficient-space model of the power-weighted Dirichlet spaces.

A function f(z) = sum a_n z**n is represented by its truncated coefficient
vector; the alpha-norm is sqrt(sum (n+1)**(1-alpha) a_n**2). alpha = 1 is
the plain l2 (Hardy) norm. The diagonal maps to_hardy/from_hardy move
between the weighted and unweighted norms isometrically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, PrecisionError

# Geometric tails are truncated once t**N drops below this.
TRUNCATION_EPS = 1e-12

_ALPHA_RANGES = {
    # admissible alpha interval per policy: (lo, lo_open, hi, hi_open)
    "strict": (0.0, True, 2.0, True),
    "abstract": (0.0, False, 2.0, True),
    "lemma": (0.0, True, 2.0, False),
}


@dataclass(frozen=True)
class SpaceParams:
    """Parameter triple (alpha, beta, gamma) with derived Carleson exponent.

    alpha_range picks which endpoint convention applies to alpha:
    "strict" is the intersection (0, 2) and the default; "abstract" allows
    alpha = 0; "lemma" allows alpha = 2.
    """

    alpha: float
    beta: float
    gamma: float
    alpha_range: str = "strict"

    def __post_init__(self):
        if self.alpha_range not in _ALPHA_RANGES:
            raise ParameterError(
                f"alpha_range must be one of {sorted(_ALPHA_RANGES)}, got {self.alpha_range!r}"
            )
        lo, lo_open, hi, hi_open = _ALPHA_RANGES[self.alpha_range]
        lo_ok = self.alpha > lo if lo_open else self.alpha >= lo
        hi_ok = self.alpha < hi if hi_open else self.alpha <= hi
        if not (lo_ok and hi_ok):
            raise ParameterError(
                f"alpha={self.alpha} outside the {self.alpha_range!r} range "
                f"{'(' if lo_open else '['}{lo}, {hi}{')' if hi_open else ']'}"
            )
        if not (2.0 <= self.beta < 4.0):
            raise ParameterError(f"beta must lie in [2, 4), got {self.beta}")
        if not self.gamma >= 1.0:
            raise ParameterError(f"gamma must be >= 1, got {self.gamma}")
        if not self.s > 0:
            raise ParameterError(
                f"Carleson exponent gamma - (beta-alpha)/2 = {self.s} must be > 0"
            )

    @property
    def s(self) -> float:
        """Carleson exponent gamma - (beta - alpha)/2."""
        return self.gamma - (self.beta - self.alpha) / 2.0


def as_coeffs(values) -> np.ndarray:
    """Validate and convert a coefficient sequence to a 1-D float array."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("coefficient sequence must be a nonempty 1-D array")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coefficient sequence contains non-finite entries")
    return arr


def dirichlet_norm(coeffs, alpha: float) -> float:
    """sqrt(sum (n+1)**(1-alpha) * a_n**2)."""
    a = as_coeffs(coeffs)
    n = np.arange(len(a), dtype=float)
    return float(np.sqrt(np.sum((n + 1.0) ** (1.0 - alpha) * a * a)))


def to_hardy(coeffs, alpha: float) -> np.ndarray:
    """Diagonal map a_n -> (n+1)**((1-alpha)/2) a_n; l2 norm of the image
    equals the alpha-norm of the input."""
    a = as_coeffs(coeffs)
    n = np.arange(len(a), dtype=float)
    return (n + 1.0) ** ((1.0 - alpha) / 2.0) * a


def from_hardy(coeffs, alpha: float) -> np.ndarray:
    """Inverse of to_hardy: b_n -> (n+1)**((alpha-1)/2) b_n.

    Note the exponent sign: this is the unique diagonal map whose image has
    alpha-norm equal to the input's l2 norm, i.e. the exact inverse of
    to_hardy.
    """
    b = as_coeffs(coeffs)
    n = np.arange(len(b), dtype=float)
    return (n + 1.0) ** ((alpha - 1.0) / 2.0) * b


def geometric_length(t: float, eps: float = TRUNCATION_EPS) -> int:
    """Shortest truncation N with t**N < eps."""
    if t == 0.0:
        return 1
    return int(math.ceil(math.log(eps) / math.log(t)))


def geometric_test_function(t: float, alpha: float, length: int | None = None) -> np.ndarray:
    """Coefficients (1-t^2)**(1-alpha/2) * t**n of the boundary test family.

    Each member has alpha-norm of order one uniformly in t; mass piles up
    near degree 1/(1-t) as t -> 1. The default truncation keeps the
    neglected geometric tail below TRUNCATION_EPS.
    """
    if not (0.0 <= t < 1.0):
        raise ValueError(f"test point must lie in [0, 1), got {t}")
    needed = geometric_length(t)
    if length is None:
        length = needed
    elif t > 0.0 and t ** length >= TRUNCATION_EPS:
        raise PrecisionError(
            f"length {length} leaves a geometric tail t**N = {t ** length:.3e} >= {TRUNCATION_EPS}; "
            f"need at least {needed}"
        )
    scale = (1.0 - t * t) ** (1.0 - alpha / 2.0)
    return scale * t ** np.arange(length, dtype=float)
