"""Histogram specification by assignment of optimal unique values.

Each group of equal input values is mapped to the scalar that minimizes the
lp distance to the matching slice of a sorted reference (its Fréchet p-mean).
Closed forms exist for p = 1 (median), p = 2 (mean), and p = inf (midpoint of
extremes); any other p >= 1 is handled by golden-section search, which the
convexity of the objective makes safe.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .decomposition import Decomposition, decompose, reconstruct
from .exceptions import (
    EmptySliceError,
    InvalidPError,
    LengthMismatchError,
    MergedUniqueValuesWarning,
)

__all__ = [
    "frechet_p_mean",
    "optimal_unique_values",
    "specify",
    "specification_error",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# Golden-section stopping rule: absolute bracket width of 1e-10 times the
# slice range, with a hard iteration cap.
_SOLVER_TOL = 1e-10
_SOLVER_MAX_ITER = 200


def _check_p(p) -> float:
    try:
        p = float(p)
    except (TypeError, ValueError) as exc:
        raise InvalidPError(f"p must be a real number >= 1 or inf, got {p!r}") from exc
    if math.isnan(p) or p < 1.0:
        raise InvalidPError(f"p must be >= 1, got {p}")
    return p


def _check_sorted(v, name: str = "reference") -> np.ndarray:
    v = np.asarray(v, dtype=float).ravel()
    if v.size > 1 and np.any(v[1:] < v[:-1]):
        raise ValueError(f"{name} must be sorted nondecreasing")
    return v


def _golden_section_min(f, a: float, b: float) -> float:
    """Minimize a convex ``f`` over [a, b]; returns the bracket midpoint."""
    tol = _SOLVER_TOL * (b - a)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(_SOLVER_MAX_ITER):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _solve_general_p(s: np.ndarray, p: float) -> float:
    lo, hi = float(s[0]), float(s[-1])
    if hi == lo:
        return lo
    scale = hi - lo

    def objective(u: float) -> float:
        # Same argmin as the lp norm; scaling keeps |.|**p well conditioned.
        return float(((np.abs(u - s) / scale) ** p).sum())

    u0 = _golden_section_min(objective, lo, hi)
    if p == 1.0:
        # Piecewise-linear objective: function comparisons stay exact, and
        # the minimum may be a flat interval, so the bracket midpoint is the
        # right answer as-is.
        return u0

    def slope(u: float) -> float:
        t = (u - s) / scale
        return float((np.sign(t) * np.abs(t) ** (p - 1.0)).sum())

    # Objective comparisons lose resolution below sqrt(eps) of the range on
    # smooth objectives, but the slope is monotone and exact to machine
    # precision: bisect its sign change around the golden-section result.
    a = max(lo, u0 - 1e-6 * scale)
    b = min(hi, u0 + 1e-6 * scale)
    if slope(a) > 0.0:
        a = lo
    if slope(b) < 0.0:
        b = hi
    for _ in range(80):
        mid = 0.5 * (a + b)
        if b - a <= 4e-16 * scale or not a < mid < b:
            break
        if slope(mid) < 0.0:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


def frechet_p_mean(values, p, *, method: str = "auto") -> float:
    """Scalar minimizing the lp distance to a sorted slice of reals.

    For p = 1 this is the median (midpoint of the two central order
    statistics on even length, which is the p -> 1+ limit), for p = 2 the
    arithmetic mean, and for p = inf the midpoint of the extremes.  Other
    exponents are solved numerically.

    Args:
        values: nonempty, sorted nondecreasing 1-D array of reals.
        p: norm exponent, any real >= 1 or ``math.inf``.
        method: "auto" picks the closed form when one exists, "closed"
            demands one, "solver" forces golden-section search (useful to
            cross-check the closed forms; requires finite p).

    Returns:
        The optimizer, always within [values[0], values[-1]].
    """
    p = _check_p(p)
    s = _check_sorted(values, name="slice")
    if s.size == 0:
        raise EmptySliceError("cannot take a barycenter of an empty slice")
    if s.size == 1:
        return float(s[0])

    if method == "auto":
        method = "closed" if p in (1.0, 2.0) or math.isinf(p) else "solver"
    if method == "closed":
        if p == 1.0:
            k = s.size
            return float(0.5 * (s[(k - 1) // 2] + s[k // 2]))
        if p == 2.0:
            return float(s.mean())
        if math.isinf(p):
            return float(0.5 * (s[0] + s[-1]))
        raise InvalidPError(f"no closed form for p={p}; use method='solver'")
    if method == "solver":
        if math.isinf(p):
            raise InvalidPError("p=inf has no solver path; use the closed form")
        return float(_solve_general_p(s, p))
    raise ValueError(f"unknown method {method!r}")


def optimal_unique_values(
    dec: Decomposition, v, p, *, method: str = "auto"
) -> np.ndarray:
    """Per-group Fréchet p-means of a sorted reference, vectorized.

    Group j of the decomposition claims the reference slice
    ``v[omega[j]:omega[j+1]]``; its optimal output value depends on that
    slice alone, so the groups decouple into independent scalar problems.
    """
    p = _check_p(p)
    v = _check_sorted(v)
    if v.size != dec.n:
        raise LengthMismatchError(
            f"reference has {v.size} values, input has {dec.n}"
        )
    lo = dec.omega[:-1]
    hi = dec.omega[1:]

    if method == "auto":
        method = "closed" if p in (1.0, 2.0) or math.isinf(p) else "solver"
    if method == "closed":
        if p == 1.0:
            left = lo + (dec.psi - 1) // 2
            right = lo + dec.psi // 2
            return 0.5 * (v[left] + v[right])
        if p == 2.0:
            return np.add.reduceat(v, lo) / dec.psi
        if math.isinf(p):
            return 0.5 * (v[lo] + v[hi - 1])
        raise InvalidPError(f"no closed form for p={p}; use method='solver'")
    if method == "solver":
        if math.isinf(p):
            raise InvalidPError("p=inf has no solver path; use the closed form")
        u = np.empty(dec.m, dtype=float)
        for j in range(dec.m):
            s = v[lo[j] : hi[j]]
            u[j] = s[0] if s.size == 1 else _solve_general_p(s, p)
        return u
    raise ValueError(f"unknown method {method!r}")


def specify(x, v, p=2, *, method: str = "auto") -> np.ndarray:
    """Transform ``x`` so its sorted values best approximate reference ``v``.

    Equal inputs always map to equal outputs, and the output order respects
    the input order.  The result is the least lp-norm transform among all
    maps with that property.  When two adjacent groups happen to receive the
    same optimal value (possible when ``v`` has long constant runs), the
    output has fewer distinct values than the input; a
    ``MergedUniqueValuesWarning`` is issued because counts are then no
    longer preserved.

    Args:
        x: input array, any totally orderable values.
        v: sorted nondecreasing reference, same length as ``x``.
        p: norm exponent (>= 1 or inf).
        method: forwarded to the per-group solver; see ``frechet_p_mean``.
    """
    dec = decompose(x)
    u = optimal_unique_values(dec, v, p, method=method)
    if dec.m > 1:
        merged = int(np.count_nonzero(u[1:] <= u[:-1]))
        if merged:
            warnings.warn(
                f"merged unique values: {merged} adjacent group pair(s) received "
                "equal outputs; output counts differ from input counts",
                MergedUniqueValuesWarning,
                stacklevel=2,
            )
    return reconstruct(dec, u)


def specification_error(y, v, p) -> float:
    """lp norm between the sorted output and the sorted reference.

    This is the p-Wasserstein distance between the two empirical samples,
    and the quantity the specification minimizes.
    """
    p = _check_p(p)
    v = _check_sorted(v)
    y = np.asarray(y, dtype=float).ravel()
    if y.size != v.size:
        raise LengthMismatchError(f"lengths differ: {y.size} vs {v.size}")
    diff = np.abs(np.sort(y, kind="stable") - v)
    if math.isinf(p):
        return float(diff.max())
    if p == 1.0:
        return float(diff.sum())
    if p == 2.0:
        return float(np.sqrt((diff * diff).sum()))
    peak = float(diff.max())
    if peak == 0.0:
        return 0.0
    return float(peak * ((diff / peak) ** p).sum() ** (1.0 / p))
