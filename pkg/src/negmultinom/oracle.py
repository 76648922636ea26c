"""Brute-force verification engines, independent of the closed forms.

``truncated_moment`` sums the monomial against the mass function over a
finite box and bounds the omitted tail; ``mc_moment`` averages it over
sampled draws.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import _kernels
from .distribution import Params, sample
from .errors import NoConvergence

__all__ = [
    "OracleEstimate",
    "truncated_moment",
    "truncated_box_sum",
    "tail_bound",
    "mc_moment",
    "mc_factorial_moment",
]

MAX_EDGE = 2**16
MAX_TERMS = 10**8


@dataclass(frozen=True)
class OracleEstimate:
    value: float
    bound: float
    kind: Literal["truncated", "montecarlo"]
    effort: int

    def brackets(self, target: float, sigmas: float = 1.0, slack: float = 0.0) -> bool:
        return abs(self.value - target) <= sigmas * self.bound + slack


def _centers(params: Params, centered: bool) -> np.ndarray:
    if centered:
        return np.array([float(params.r * yi) for yi in params.y])
    return np.zeros(params.d)


def _edges(params: Params, K: int) -> np.ndarray:
    # coordinates with x_i = 0 are identically zero
    return np.array([K if float(xi) > 0 else 0 for xi in params.x], dtype=np.int64)


def _tables(params: Params, p: Sequence[int], centered: bool, K: int):
    r = float(params.r)
    q = float(params.mass)
    d = params.d
    ks = np.arange(K + 1, dtype=np.float64)
    lgk = np.array([math.lgamma(k + 1.0) for k in range(K + 1)])
    logw = np.empty((d, K + 1))
    g = np.empty((d, K + 1))
    c = _centers(params, centered)
    for i in range(d):
        xi = float(params.x[i])
        logw[i] = (ks * math.log(xi) if xi > 0 else np.zeros(K + 1)) - lgk
        g[i] = (ks - c[i]) ** p[i]
    base = r * math.log1p(-q) - math.lgamma(r)
    level = np.array([math.lgamma(r + s) + base for s in range(d * K + 1)])
    return logw, g, level


def truncated_box_sum(params: Params, p: Sequence[int], centered: bool, K: int) -> float:
    """``sum g(k) P(k)`` over ``0 <= k_i <= K`` (no tail correction)."""
    p = params.check_dim(p, "p")
    edges = _edges(params, K)
    logw, g, level = _tables(params, p, centered, K)
    return float(_kernels.box_sum(edges, logw, g, level))


def _log_total_count_pmf(r: float, q: float, s: int) -> float:
    return (
        math.lgamma(r + s) - math.lgamma(r) - math.lgamma(s + 1.0)
        + r * math.log1p(-q) + s * math.log(q)
    )


def tail_bound(params: Params, p: Sequence[int], centered: bool, K: int) -> tuple[float, float]:
    """Upper bound on the mass-weighted ``|g|`` omitted by the box ``[0, K]^d``.

    Returns ``(bound, rho)``.  Points outside the box have total count
    ``S > K``; ``S`` is negative binomial with parameter ``|x|`` and
    ``|g(k)| <= (S + c)^m`` with ``m = |p|`` and ``c`` the largest centre.
    Successive shell terms shrink by at most
    ``rho = |x| * max(1, (K + r)/(K + 1)) * (1 + 1/K)^m``, so the tail is at
    most ``t(K + 1) / (1 - rho)``.  ``bound`` is ``inf`` when ``rho >= 1``.
    """
    r = float(params.r)
    q = float(params.mass)
    m = sum(p)
    if q == 0.0:
        return 0.0, 0.0
    rho = q * max(1.0, (K + r) / (K + 1.0)) * (1.0 + 1.0 / K) ** m
    if rho >= 1.0:
        return math.inf, rho
    c = float(_centers(params, centered).max()) if centered else 0.0
    s = K + 1
    log_t = _log_total_count_pmf(r, q, s) + m * math.log(s + c)
    return math.exp(log_t) / (1.0 - rho), rho


def truncated_moment(
    params: Params,
    p: Sequence[int],
    centered: bool = False,
    tol: float = 1e-10,
    *,
    start: int = 16,
) -> OracleEstimate:
    """Truncated-sum estimate of a raw or centred mixed moment.

    The box edge ``K`` doubles from ``start`` until :func:`tail_bound` is
    at most ``tol`` (absolute).  Centring uses the exact mean ``r y_i``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    p = params.check_dim(p, "p")
    active = sum(1 for xi in params.x if float(xi) > 0)
    K = max(1, start)
    while True:
        bound, rho = tail_bound(params, p, centered, K)
        if bound <= tol:
            break
        nxt = 2 * K
        if nxt > MAX_EDGE or (nxt + 1) ** active > MAX_TERMS:
            raise NoConvergence(
                f"tail bound {bound:.3g} > tol {tol:.3g} at K={K} (rho={rho:.4f})"
            )
        K = nxt
    value = truncated_box_sum(params, p, centered, K)
    return OracleEstimate(value=value, bound=bound, kind="truncated", effort=K)


def _mc(draws: np.ndarray, p, center, falling: bool) -> tuple[float, float]:
    pa = np.asarray(p, dtype=np.int64)
    mean, var = _kernels.monomial_stats(np.ascontiguousarray(draws), pa, center, falling)
    n = draws.shape[0]
    return float(mean), math.sqrt(max(var, 0.0) / n)


def mc_moment(
    params: Params,
    p: Sequence[int],
    centered: bool = False,
    n: int = 10**6,
    seed: int = 0,
    *,
    draws: np.ndarray | None = None,
) -> OracleEstimate:
    """Monte Carlo mean of the monomial with its standard error.

    ``draws`` may be passed to reuse a sample; it must then come from
    ``sample(params, n, seed)`` for the result to be reproducible.
    """
    p = params.check_dim(p, "p")
    if draws is None:
        if n < 2:
            raise ValueError("n must be at least 2")
        draws = sample(params, n, seed)
    value, se = _mc(draws, p, _centers(params, centered), False)
    return OracleEstimate(value=value, bound=se, kind="montecarlo", effort=draws.shape[0])


def mc_factorial_moment(
    params: Params,
    k: Sequence[int],
    n: int = 10**6,
    seed: int = 0,
    *,
    draws: np.ndarray | None = None,
) -> OracleEstimate:
    """Monte Carlo estimate of ``E[prod_i eta_i^(k_i)]``."""
    k = params.check_dim(k, "k")
    if draws is None:
        draws = sample(params, n, seed)
    value, se = _mc(draws, k, np.zeros(params.d), True)
    return OracleEstimate(value=value, bound=se, kind="montecarlo", effort=draws.shape[0])
