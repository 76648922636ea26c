"""Multi-indices and the odometer over integer boxes."""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence

import numpy as np

__all__ = ["as_multiindex", "iter_box", "box_array", "box_size", "multiindices_upto"]


def as_multiindex(values: Sequence[int], name: str = "index") -> tuple[int, ...]:
    out = []
    for v in values:
        iv = int(v)
        if iv != v or iv < 0:
            raise ValueError(f"{name} entries must be non-negative integers, got {v!r}")
        out.append(iv)
    return tuple(out)


def iter_box(bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Visit every integer vector ``0 <= k <= bounds`` exactly once.

    Order is lexicographic with the last coordinate turning fastest, like
    an odometer.  An empty ``bounds`` yields the single empty tuple.
    """
    return itertools.product(*(range(b + 1) for b in bounds))


def box_size(bounds: Sequence[int]) -> int:
    n = 1
    for b in bounds:
        n *= b + 1
    return n


def box_array(bounds: Sequence[int]) -> np.ndarray:
    """All box points as an ``(N, d)`` int64 array, in ``iter_box`` order."""
    d = len(bounds)
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*(np.arange(b + 1, dtype=np.int64) for b in bounds), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def multiindices_upto(d: int, order: int) -> Iterator[tuple[int, ...]]:
    """All ``p`` in ``N_0^d`` with ``sum(p) <= order``, in box order."""
    for p in iter_box([order] * d):
        if sum(p) <= order:
            yield p
