"""Composite Gauss-Legendre quadrature with geometric endpoint refinement.

The integrands in this package are smooth except at an interval endpoint,
where they may be integrable-singular (like u**(c-1) with 0 < c < 1) or
sharply concentrated (like t**n near t = 1). Both cases are handled by the
same device: panels whose widths shrink geometrically toward the critical
endpoint. On each panel the integrand varies by a bounded factor, so a
fixed-order Gauss rule converges fast.

Refinement is always expressed *toward zero* in a local variable: panels
[h*2**-(j+1), h*2**-j] never hit the floating-point wall that panels of the
form [1 - 2**-j, 1 - 2**-(j-1)] hit at j ~ 53.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

import numpy as np


@lru_cache(maxsize=None)
def leggauss_rule(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre points and weights on [-1, 1], cached per order."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def composite_gl(f: Callable[[np.ndarray], np.ndarray], breakpoints, nodes: int = 16) -> float:
    """Integrate a vectorized f over the panels defined by sorted breakpoints."""
    bp = np.asarray(breakpoints, dtype=float)
    if bp.ndim != 1 or bp.size < 2:
        raise ValueError("breakpoints must be a 1-D array with at least two entries")
    x, w = leggauss_rule(nodes)
    lo, hi = bp[:-1], bp[1:]
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return float(np.dot(wts, f(pts)))


def dyadic_toward_zero(width: float, levels: int) -> np.ndarray:
    """Breakpoints width*2**-levels, ..., width/2, width (ascending).

    The sliver [0, width*2**-levels] is intentionally excluded; callers pick
    `levels` so that its contribution is below their tolerance.
    """
    j = np.arange(levels, -1, -1, dtype=float)
    return width * np.exp2(-j)


def dyadic_toward_one(levels: int) -> np.ndarray:
    """Breakpoints 0, 1/2, 3/4, ..., 1-2**-levels, 1 on the unit interval.

    Safe only for levels <= 50: beyond that 1 - 2**-j collapses onto 1.0.
    """
    if levels > 50:
        raise ValueError("dyadic_toward_one is limited to 50 levels; substitute u = 1 - t instead")
    pts = 1.0 - np.exp2(-np.arange(levels + 1, dtype=float))
    return np.append(pts, 1.0)


def integrate_power_weighted(
    g: Callable[[np.ndarray], np.ndarray],
    exponent_shift: float,
    width: float,
    nodes: int = 16,
) -> float:
    """Integrate u**(exponent_shift-1) * g(u) over (0, width] with g smooth.

    For exponent_shift >= 1 the integrand is bounded; below 1 it is
    integrable-singular at 0. Panel count is adapted so the neglected
    sliver near 0 is ~2**-40 of the total in relative terms.
    """
    if width <= 0:
        return 0.0
    c = exponent_shift
    levels = int(np.ceil(40.0 / min(c, 1.0))) + 12
    levels = min(levels, 900)
    bp = dyadic_toward_zero(width, levels)
    return composite_gl(lambda u: u ** (c - 1.0) * g(u), bp, nodes=nodes)


def unit_panels_toward_zero(levels: int, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """All Gauss points/weights for (0, 1/2] refined dyadically toward 0.

    Returned as flat arrays so a log-space integrand can be evaluated in one
    vectorized call.
    """
    x, w = leggauss_rule(nodes)
    hi = 0.5 * np.exp2(-np.arange(levels, dtype=float))
    lo = hi / 2.0
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return pts, wts
