"""Sorted-unique factorization of an array and ordered-assignment reconstruction.

An input array is factored into stable sort indices, strictly increasing
unique values, their counts, and cumulative group offsets.  The offsets make
the sorted array a concatenation of constant groups, which is all that later
stages need: the block structure is never materialized as a matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import EmptyInputError, LengthMismatchError, UnorderableValueError

__all__ = ["Decomposition", "argsort_stable", "decompose", "reconstruct"]


@dataclass(frozen=True)
class Decomposition:
    """Sorted-unique factorization of a source array.

    Attributes:
        n: number of input elements.
        m: number of distinct input values (m <= n).
        phi: stable sort indices, a permutation of 0..n-1.
        e: the m unique values, strictly increasing.
        psi: count of each unique value; sums to n.
        omega: m+1 group offsets; sorted position range of unique value j
            is [omega[j], omega[j+1]).
    """

    n: int
    m: int
    phi: np.ndarray
    e: np.ndarray
    psi: np.ndarray
    omega: np.ndarray


def _as_orderable_array(x) -> np.ndarray:
    arr = np.asarray(x)
    if arr.ndim != 1:
        arr = arr.ravel()
    if arr.size == 0:
        raise EmptyInputError("input array is empty")
    if np.issubdtype(arr.dtype, np.floating) and np.isnan(arr).any():
        raise UnorderableValueError("input contains NaN, which has no total order")
    return arr


def argsort_stable(x) -> np.ndarray:
    """Return indices that sort ``x``, preserving input order among ties.

    Stability matters: constant runs in the input stay contiguous and in
    original order after sorting, so reconstruction is deterministic.
    """
    arr = _as_orderable_array(x)
    try:
        return np.argsort(arr, kind="stable")
    except TypeError as exc:
        raise UnorderableValueError(f"elements cannot be compared: {exc}") from exc


def decompose(x) -> Decomposition:
    """Factor ``x`` into sort indices, unique values, counts, and offsets.

    Accepts any 1-D array whose elements are totally orderable (reals,
    integers, or ordered tokens such as strings); no arithmetic is performed
    on the values themselves.
    """
    arr = _as_orderable_array(x)
    phi = argsort_stable(arr)
    xs = arr[phi]

    n = int(xs.shape[0])
    is_group_start = np.empty(n, dtype=bool)
    is_group_start[0] = True
    np.not_equal(xs[1:], xs[:-1], out=is_group_start[1:])

    starts = np.flatnonzero(is_group_start)
    omega = np.concatenate([starts, [n]])
    e = xs[starts]
    psi = np.diff(omega)
    return Decomposition(n=n, m=int(e.shape[0]), phi=phi, e=e, psi=psi, omega=omega)


def reconstruct(dec: Decomposition, u) -> np.ndarray:
    """Expand per-group values ``u`` back to the original array positions.

    Sorted position i in group j receives ``u[j]``; the stable sort indices
    then place every value at its source position, so equal inputs always
    map to equal outputs.
    """
    u = np.asarray(u)
    if u.ndim != 1:
        u = u.ravel()
    if u.shape[0] != dec.m:
        raise LengthMismatchError(
            f"expected {dec.m} group values, got {u.shape[0]}"
        )
    y = np.empty(dec.n, dtype=u.dtype)
    y[dec.phi] = np.repeat(u, dec.psi)
    return y
