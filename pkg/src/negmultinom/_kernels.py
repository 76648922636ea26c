"""Hot numeric loops for the verification oracles.

Two interchangeable implementations of each kernel:

* ``*_numba``: ``@njit`` odometer / streaming loops;
* ``*_numpy``: vectorized NumPy, no compiler needed.

``box_sum`` and ``monomial_stats`` are bound to the numba versions unless
the environment variable ``NEGMULTINOM_DISABLE_NUMBA`` is set to a
non-empty value other than ``0`` or numba cannot be imported.  Both paths
agree to rounding; ``benchmarks/bench_kernels.py`` compares their speed.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


def _numba_disabled() -> bool:
    flag = os.environ.get("NEGMULTINOM_DISABLE_NUMBA", "")
    return flag not in ("", "0")


USE_NUMBA = HAVE_NUMBA and not _numba_disabled()
BACKEND = "numba" if USE_NUMBA else "numpy"


# -- truncated expectation over a box ---------------------------------------
#
# sum_{0 <= k <= edges} exp(level[|k|] + sum_i logw[i, k_i]) * prod_i g[i, k_i]
#
# logw[i, k] = k log x_i - lgamma(k + 1)
# level[s]   = lgamma(r + s) - lgamma(r) + r log(1 - |x|)
# g[i, k]    = (k - c_i)^p_i


@njit(cache=True)
def box_sum_numba(edges, logw, g, level):
    d = edges.shape[0]
    last = d - 1
    n_last = edges[last] + 1
    k = np.zeros(d, dtype=np.int64)
    total = 0.0
    while True:
        # prefix over coordinates 0..d-2, then a tight loop over the last one
        s0 = 0
        lw0 = 0.0
        g0 = 1.0
        for i in range(last):
            ki = k[i]
            s0 += ki
            lw0 += logw[i, ki]
            g0 *= g[i, ki]
        if g0 != 0.0:
            inner = 0.0
            for j in range(n_last):
                gj = g[last, j]
                if gj != 0.0:
                    inner += math.exp(level[s0 + j] + lw0 + logw[last, j]) * gj
            total += g0 * inner
        # odometer over the outer coordinates, d-2 fastest
        i = last - 1
        while i >= 0:
            k[i] += 1
            if k[i] <= edges[i]:
                break
            k[i] = 0
            i -= 1
        if i < 0:
            break
    return total


def box_sum_numpy(edges, logw, g, level):
    d = edges.shape[0]
    # flatten coordinates 1..d-1 into one axis, loop over coordinate 0
    rest_s = np.zeros(1, dtype=np.int64)
    rest_lw = np.zeros(1)
    rest_g = np.ones(1)
    for i in range(1, d):
        ks = np.arange(edges[i] + 1)
        rest_s = np.add.outer(rest_s, ks).ravel()
        rest_lw = np.add.outer(rest_lw, logw[i, : edges[i] + 1]).ravel()
        rest_g = np.multiply.outer(rest_g, g[i, : edges[i] + 1]).ravel()
    total = 0.0
    for k0 in range(edges[0] + 1):
        g0 = g[0, k0]
        if g0 == 0.0:
            continue
        s = rest_s + k0
        terms = np.exp(level[s] + logw[0, k0] + rest_lw) * rest_g
        total += g0 * float(terms.sum())
    return total


# -- streaming monomial statistics over sampled count vectors ---------------


@njit(cache=True)
def monomial_stats_numba(draws, p, center, falling):
    n, d = draws.shape
    mean = 0.0
    m2 = 0.0
    for j in range(n):
        v = 1.0
        for i in range(d):
            e = draws[j, i]
            if falling:
                for t in range(p[i]):
                    v *= e - t
            else:
                base = e - center[i]
                for t in range(p[i]):
                    v *= base
        # Welford update
        delta = v - mean
        mean += delta / (j + 1)
        m2 += delta * (v - mean)
    if n > 1:
        return mean, m2 / (n - 1)
    return mean, 0.0


def monomial_stats_numpy(draws, p, center, falling):
    n, d = draws.shape
    vals = np.ones(n)
    x = draws.astype(np.float64)
    for i in range(d):
        if p[i] == 0:
            continue
        if falling:
            for t in range(p[i]):
                vals *= x[:, i] - t
        else:
            vals *= (x[:, i] - center[i]) ** p[i]
    mean = float(vals.mean())
    var = float(vals.var(ddof=1)) if n > 1 else 0.0
    return mean, var


if USE_NUMBA:
    box_sum = box_sum_numba
    monomial_stats = monomial_stats_numba
else:
    box_sum = box_sum_numpy
    monomial_stats = monomial_stats_numpy
