"""Exact integer combinatorics used by the moment formulas."""

from __future__ import annotations

import math
import threading

from .scalar import Scalar

__all__ = ["stirling2", "stirling_row", "binomial", "falling_factorial"]

_lock = threading.Lock()
# rows[p] = [S(p, 0), ..., S(p, p)]; append-only, so readers never see a
# partially built row.
_rows: list[tuple[int, ...]] = [(1,)]


def _ensure_rows(p: int) -> None:
    if p < len(_rows):
        return
    with _lock:
        while len(_rows) <= p:
            prev = _rows[-1]
            n = len(prev)
            row = [0] * (n + 1)
            for k in range(1, n + 1):
                left = prev[k - 1]
                right = prev[k] if k < n else 0
                row[k] = k * right + left
            _rows.append(tuple(row))


def stirling_row(p: int) -> list[int]:
    """Return ``[S(p, 0), ..., S(p, p)]`` (Stirling numbers of the second
    kind)."""
    if p < 0:
        raise ValueError("p must be non-negative")
    _ensure_rows(p)
    return list(_rows[p])


def stirling2(p: int, k: int) -> int:
    """Number of partitions of a ``p``-element set into ``k`` non-empty
    blocks.  Zero when ``k > p``."""
    if p < 0 or k < 0:
        raise ValueError("p and k must be non-negative")
    if k > p:
        return 0
    _ensure_rows(p)
    return _rows[p][k]


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    return math.comb(n, k)


def falling_factorial(m: Scalar | int, k: int) -> Scalar | int:
    """``m (m - 1) ... (m - k + 1)`` by iterated multiplication.

    The result has the type of ``m`` (int, float or Fraction); ``k = 0``
    gives 1 for every ``m``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    out = m * 0 + 1
    for j in range(k):
        out *= m - j
    return out
