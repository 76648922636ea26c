"""Negative multinomial parameters, mass function and sampler."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from collections.abc import Sequence

import numpy as np

from .combinatorics import falling_factorial
from .errors import (
    DimensionMismatch,
    EmptyDimension,
    ExactModeUnsupported,
    MassAtLeastOne,
    NegativeProbability,
    NonPositiveR,
)
from .multiindex import as_multiindex
from .scalar import Scalar, coerce

__all__ = ["Params", "validate_params", "pmf", "log_pmf", "sample"]

# beyond this total count the float product of gamma ratio and powers
# overflows, so pmf switches to the log route
_DIRECT_PMF_LIMIT = 150


@dataclass(frozen=True)
class Params:
    """Validated parameters ``(r, x)`` with the derived odds ``y``.

    ``y[i] = x[i] / (1 - sum(x))``.  Build instances with
    :func:`validate_params`.
    """

    r: Scalar
    x: tuple[Scalar, ...]
    y: tuple[Scalar, ...]
    exact: bool

    @property
    def d(self) -> int:
        return len(self.x)

    @property
    def mass(self) -> Scalar:
        return sum(self.x, self.r * 0)

    def check_dim(self, index: Sequence[int], what: str = "index") -> tuple[int, ...]:
        idx = as_multiindex(index, what)
        if len(idx) != self.d:
            raise DimensionMismatch(
                f"{what} has length {len(idx)} but the distribution has d={self.d}"
            )
        return idx


def validate_params(r, x: Sequence, exact: bool = False) -> Params:
    """Check ``r > 0``, ``x_i >= 0``, ``sum(x) < 1`` and ``d >= 1``.

    With ``exact=True`` every value is converted to ``Fraction`` (strings
    like ``"1/4"`` are accepted) and all downstream arithmetic is exact.
    """
    xs = tuple(x)
    if len(xs) == 0:
        raise EmptyDimension("x must have at least one coordinate")
    r_s = coerce(r, exact)
    x_s = tuple(coerce(v, exact) for v in xs)
    if not r_s > 0:
        raise NonPositiveR(f"r must be positive, got {r_s}")
    for i, v in enumerate(x_s):
        if not v >= 0:
            raise NegativeProbability(f"x[{i}] = {v} is negative")
    total = sum(x_s, r_s * 0)
    if not total < 1:
        raise MassAtLeastOne(f"sum(x) = {total} must be < 1")
    if not exact and not (math.isfinite(r_s)):
        raise NonPositiveR("r must be finite")
    rest = 1 - total
    y_s = tuple(v / rest for v in x_s)
    return Params(r=r_s, x=x_s, y=y_s, exact=exact)


def pmf(params: Params, k: Sequence[int]) -> Scalar:
    """Probability of the count vector ``k``.

    Exact mode requires integer ``r``: the factor ``(1 - sum(x))**r`` is
    otherwise irrational.
    """
    k = params.check_dim(k, "k")
    n = sum(k)
    if params.exact:
        r = params.r
        if r.denominator != 1:
            raise ExactModeUnsupported(
                f"exact pmf needs integer r (got {r}); use float mode"
            )
        coef = Fraction(falling_factorial(r - 1 + n, n))
        for ki in k:
            coef /= math.factorial(ki)
        out = coef * (1 - params.mass) ** int(r)
        for xi, ki in zip(params.x, k):
            out *= xi**ki
        return out
    if n > _DIRECT_PMF_LIMIT:
        return math.exp(log_pmf(params, k))
    r = params.r
    coef = falling_factorial(r - 1.0 + n, n)
    for ki in k:
        coef /= math.factorial(ki)
    out = coef * (1.0 - params.mass) ** r
    for xi, ki in zip(params.x, k):
        if ki:
            out *= xi**ki
    return out


def log_pmf(params: Params, k: Sequence[int]) -> float:
    """Natural log of :func:`pmf`, via log-gamma (float only).

    Returns ``-inf`` when ``k`` puts mass on a coordinate with ``x_i = 0``.
    """
    k = params.check_dim(k, "k")
    r = float(params.r)
    n = sum(k)
    out = math.lgamma(r + n) - math.lgamma(r) + r * math.log1p(-float(params.mass))
    for xi, ki in zip(params.x, k):
        out -= math.lgamma(ki + 1)
        if ki:
            xf = float(xi)
            if xf == 0.0:
                return -math.inf
            out += ki * math.log(xf)
    return out


def sample(params: Params, n: int, seed: int) -> np.ndarray:
    """Draw ``n`` count vectors as an ``(n, d)`` int64 array.

    Gamma-Poisson mixture: ``L ~ Gamma(r, 1)`` and, given ``L``,
    independent ``eta_i ~ Poisson(L * y_i)``.  Output depends only on
    ``(params, n, seed)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(np.uint64(seed & 0xFFFFFFFFFFFFFFFF))
    y = np.array([float(v) for v in params.y], dtype=np.float64)
    lam = rng.gamma(float(params.r), 1.0, size=n)
    return rng.poisson(lam[:, None] * y[None, :]).astype(np.int64, copy=False)
