"""Estimation baseline: classical quantile estimation and CDF inversion.

This is the conventional route to histogram specification.  Estimate the
quantile function of the data on a grid, read each data value's quantile
off the resulting piecewise-linear CDF, then push those quantiles through
the reference's quantile function.  It is provided as the comparison
baseline; the direct optimal assignment never does worse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomposition import argsort_stable
from .exceptions import DomainError, EmptyInputError
from .quantile import (
    TYPE_6,
    EmpiricalReference,
    NormalReference,
    PlottingPositions,
    ReferenceSpec,
    UniformReference,
    normal_inverse_cdf,
    uniform_reference,
)

__all__ = [
    "QuantileEstimateTable",
    "estimate_quantiles",
    "quantile_table",
    "baseline_transform",
]


@dataclass(frozen=True)
class QuantileEstimateTable:
    """Knots (probs[k], values[k]) of an estimated quantile function.

    probs is strictly increasing, values nondecreasing; together they define
    a piecewise-linear CDF that the baseline inverts.
    """

    probs: np.ndarray
    values: np.ndarray


def _sort_numeric(x) -> np.ndarray:
    xs = np.asarray(x, dtype=float).ravel()
    if xs.size == 0:
        raise EmptyInputError("cannot estimate quantiles of empty data")
    return xs[argsort_stable(xs)]


def _estimate_at(
    xs: np.ndarray, q: np.ndarray, params: PlottingPositions
) -> np.ndarray:
    """Evaluate the order-statistic quantile estimator at probabilities q.

    xs must be sorted.  Rank h = alpha + q * (n + 1 - alpha - beta)
    (1-based) is linearly interpolated between neighboring order statistics
    and clamped to the observed extremes.
    """
    params.gamma(xs.size)
    h = params.alpha + q * (xs.size + 1.0 - params.alpha - params.beta)
    h = np.clip(h, 1.0, float(xs.size))
    # lo is the 1-based rank of the lower order statistic; capping at n - 1
    # turns the h == n endpoint into interpolation weight 1 on the last stat.
    lo = np.minimum(np.floor(h).astype(np.intp), xs.size - 1)
    frac = h - lo
    return xs[lo - 1] * (1.0 - frac) + xs[lo] * frac


def estimate_quantiles(
    x, probs, params: PlottingPositions = TYPE_6
) -> QuantileEstimateTable:
    """Classical sample quantiles of x at the requested probabilities.

    Probabilities are sorted and deduplicated so the resulting table is a
    valid piecewise-linear quantile function (strictly increasing probs,
    nondecreasing values).
    """
    xs = _sort_numeric(x)
    q = np.atleast_1d(np.asarray(probs, dtype=float))
    if q.size == 0:
        raise EmptyInputError("need at least one probability")
    if np.any(q < 0.0) or np.any(q > 1.0) or np.any(np.isnan(q)):
        raise DomainError("probabilities must lie in [0, 1]")
    q = np.unique(q)
    return QuantileEstimateTable(q, _estimate_at(xs, q, params))


def quantile_table(x, params: PlottingPositions = TYPE_6) -> QuantileEstimateTable:
    """Estimated quantile function of x sampled at its own plotting positions.

    At probability gamma*(i+1-alpha) the rank h = alpha + (i+1-alpha) lands
    exactly on the integer i+1 for every alpha/beta, so the knot values are
    the order statistics themselves.  Reading them directly (instead of
    interpolating at rounded ranks) keeps runs of tied knots exactly tied,
    which the inversion's flat-segment rule depends on.
    """
    xs = _sort_numeric(x)
    params.gamma(xs.size)
    return QuantileEstimateTable(uniform_reference(xs.size, params), xs)


def _invert_cdf(table: QuantileEstimateTable, t: np.ndarray) -> np.ndarray:
    """Quantiles of t under the piecewise-linear CDF given by the table.

    Values inside a run of equal knots (a jump of the CDF) take the midpoint
    of the run's probability range; values between knots interpolate
    linearly; values beyond the extremes clamp to the end probabilities.
    """
    probs, values = table.probs, table.values
    lo = np.searchsorted(values, t, side="left")
    hi = np.searchsorted(values, t, side="right")

    q = np.empty(t.shape, dtype=float)

    tied = lo < hi
    q[tied] = 0.5 * (probs[lo[tied]] + probs[hi[tied] - 1])

    miss = ~tied
    below = miss & (lo == 0)
    above = miss & (lo == values.size)
    q[below] = probs[0]
    q[above] = probs[-1]

    mid = miss & ~below & ~above
    if mid.any():
        k = lo[mid]
        span = values[k] - values[k - 1]
        w = (t[mid] - values[k - 1]) / span
        q[mid] = probs[k - 1] + w * (probs[k] - probs[k - 1])
    return q


def baseline_transform(
    x, ref: ReferenceSpec, params: PlottingPositions = TYPE_6
) -> np.ndarray:
    """Histogram specification by quantile estimation and CDF inversion.

    Builds the estimated quantile table of x, inverts it at every data value
    to get quantiles, then maps those through the reference: identity for a
    uniform reference, the normal quantile function for a normal one, and
    the estimated quantile function of the reference sample for an empirical
    one.  Ties in x receive equal outputs by construction.
    """
    xs = np.asarray(x, dtype=float).ravel()
    table = quantile_table(xs, params)
    q = _invert_cdf(table, xs)

    if isinstance(ref, UniformReference):
        return q
    if isinstance(ref, NormalReference):
        return normal_inverse_cdf(q, ref.mu, ref.sigma)
    if isinstance(ref, EmpiricalReference):
        return _estimate_at(_sort_numeric(ref.data), q, params)
    raise TypeError(f"unknown reference spec: {ref!r}")
