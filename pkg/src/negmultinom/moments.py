"""Closed-form moments of the negative multinomial distribution.

Every function works in the numeric mode of its ``Params``: floats in
float mode, exact ``Fraction`` arithmetic in exact mode.
"""

from __future__ import annotations

from collections.abc import Sequence

from .combinatorics import binomial, falling_factorial, stirling_row
from .distribution import Params
from .multiindex import iter_box
from .scalar import Scalar

__all__ = [
    "factorial_moment",
    "noncentral_moment",
    "central_moment",
    "central_moment_from_noncentral",
    "mean_vector",
]


def _one(params: Params) -> Scalar:
    return params.r * 0 + 1


def _rising_prefactors(params: Params, top: int) -> list[Scalar]:
    """``[(r - 1 + K)^(K) for K in 0..top]``, built incrementally.

    ``(r - 1 + K)^(K) = r (r + 1) ... (r + K - 1)``, so each level is the
    previous one times ``r + K - 1``.
    """
    out = [_one(params)]
    for K in range(1, top + 1):
        out.append(out[-1] * (params.r + K - 1))
    return out


def _powers(base: Scalar, top: int) -> list[Scalar]:
    out = [base * 0 + 1]
    for _ in range(top):
        out.append(out[-1] * base)
    return out


def factorial_moment(params: Params, k: Sequence[int]) -> Scalar:
    """``E[prod_i eta_i^(k_i)]`` (falling factorials of the counts)."""
    k = params.check_dim(k, "k")
    n = sum(k)
    out = falling_factorial(params.r - 1 + n, n)
    for yi, ki in zip(params.y, k):
        out *= yi**ki
    return out


def noncentral_moment(params: Params, p: Sequence[int]) -> Scalar:
    """Raw mixed moment ``E[prod_i eta_i^p_i]``.

    Expands each power in falling factorials with Stirling numbers of the
    second kind and applies the factorial-moment formula term by term over
    the box ``0 <= k <= p``.
    """
    p = params.check_dim(p, "p")
    ff = _rising_prefactors(params, sum(p))
    rows = [stirling_row(pi) for pi in p]
    ypow = [_powers(yi, pi) for yi, pi in zip(params.y, p)]
    total = params.r * 0
    for k in iter_box(p):
        term = ff[sum(k)]
        for i, ki in enumerate(k):
            s = rows[i][ki]
            if s == 0:
                break
            term = term * s * ypow[i][ki]
        else:
            total += term
    return total


def central_moment(params: Params, p: Sequence[int]) -> Scalar:
    """Central mixed moment ``E[prod_i (eta_i - E eta_i)^p_i]``.

    Direct evaluation of the closed-form triple sum over ``0 <= l <= p``
    and ``0 <= k <= l``.
    """
    p = params.check_dim(p, "p")
    ff = _rising_prefactors(params, sum(p))
    y = params.y
    ypow = [_powers(yi, 2 * pi) for yi, pi in zip(y, p)]
    neg_r = _powers(-params.r, sum(p))
    total = params.r * 0
    for ell in iter_box(p):
        shift = sum(pi - li for pi, li in zip(p, ell))
        outer = neg_r[shift]
        for i, (pi, li) in enumerate(zip(p, ell)):
            outer *= binomial(pi, li)
        rows = [stirling_row(li) for li in ell]
        for k in iter_box(ell):
            term = ff[sum(k)] * outer
            for i, ki in enumerate(k):
                s = rows[i][ki]
                if s == 0:
                    break
                term = term * s * ypow[i][p[i] - ell[i] + ki]
            else:
                total += term
    return total


def central_moment_from_noncentral(params: Params, p: Sequence[int]) -> Scalar:
    """Central moment by binomial re-expansion around the mean.

    ``sum_l prod_i C(p_i, l_i) (-r y_i)^(p_i - l_i) * E[prod_i eta_i^l_i]``.
    Independent of :func:`central_moment`'s inner summation; used to
    cross-check it.
    """
    p = params.check_dim(p, "p")
    neg_mean = [-m for m in mean_vector(params)]
    total = params.r * 0
    for ell in iter_box(p):
        coef = _one(params)
        for pi, li, mu in zip(p, ell, neg_mean):
            coef *= binomial(pi, li) * mu ** (pi - li)
        total += coef * noncentral_moment(params, ell)
    return total


def mean_vector(params: Params) -> list[Scalar]:
    return [params.r * yi for yi in params.y]
