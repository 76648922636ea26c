"""Symbolic moment formulas as canonical sparse polynomials.

Two bases are used:

``MomentPolynomial``
    ``sum c * (r - 1 + K)^(K) * prod_i y_i^e_i`` keyed by ``(K, e)``;
    the natural output of the Stirling expansion of raw moments.
``RPolynomial``
    ``sum c * r^a * prod_i y_i^e_i`` keyed by ``(a, e)``; the fully
    expanded form, where central-moment cancellations become visible.

Coefficients are Python integers throughout.
"""

from __future__ import annotations

import functools
from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import binomial, falling_factorial, stirling_row
from .errors import DimensionMismatch
from .multiindex import as_multiindex, iter_box
from .scalar import Scalar

__all__ = [
    "MomentPolynomial",
    "RPolynomial",
    "derive_noncentral_poly",
    "derive_central_poly",
    "expand_to_r_poly",
    "poly_eval",
    "rising_coefficients",
]

Key = tuple[int, tuple[int, ...]]


def _canonical(terms: Mapping[Key, int] | Iterable[tuple[Key, int]], d: int) -> tuple[tuple[Key, int], ...]:
    items = terms.items() if isinstance(terms, Mapping) else terms
    acc: dict[Key, int] = defaultdict(int)
    for (deg, e), c in items:
        e = tuple(e)
        if len(e) != d:
            raise DimensionMismatch(f"exponent {e} does not have length {d}")
        acc[(int(deg), e)] += int(c)
    return tuple(sorted((k, c) for k, c in acc.items() if c != 0))


class _SparsePoly:
    """Shared storage: sorted ``((degree, exponents), coefficient)`` pairs."""

    __slots__ = ("_terms", "d")
    _degree_name = "degree"

    def __init__(self, terms: Mapping[Key, int] | Iterable[tuple[Key, int]] = (), d: int = 1):
        if d < 0:
            raise ValueError("d must be non-negative")
        self.d = d
        self._terms = _canonical(terms, d)

    @property
    def terms(self) -> dict[Key, int]:
        return dict(self._terms)

    def items(self) -> tuple[tuple[Key, int], ...]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.d == other.d and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.d, self._terms))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({dict(self._terms)!r}, d={self.d})"

    def padded(self, d: int):
        """Same polynomial in ``d >= self.d`` variables (extra exponents 0)."""
        if d < self.d:
            raise ValueError("cannot shrink dimension")
        pad = (0,) * (d - self.d)
        return type(self)([((k, e + pad), c) for (k, e), c in self._terms], d)

    def permuted(self, sigma: Sequence[int]):
        """Relabel variables: new exponent ``i`` is old exponent ``sigma[i]``."""
        if sorted(sigma) != list(range(self.d)):
            raise ValueError("sigma must be a permutation of range(d)")
        return type(self)(
            [((k, tuple(e[s] for s in sigma)), c) for (k, e), c in self._terms], self.d
        )

    def to_json(self) -> list[dict]:
        return [
            {self._degree_name: k, "y": list(e), "coeff": c} for (k, e), c in self._terms
        ]


class MomentPolynomial(_SparsePoly):
    """``sum c * (r - 1 + K)^(K) * y^e`` keyed by ``(K, e)``."""

    __slots__ = ()
    _degree_name = "k"

    def format(self) -> str:
        parts = []
        for (K, e), c in self._terms:
            factors = []
            if K > 0:
                factors.append(f"(r+{K - 1})^({K})")
            mono = _format_monomial(e)
            if mono:
                factors.append(mono)
            parts.append((c, factors))
        return _join_terms(parts)


class RPolynomial(_SparsePoly):
    """``sum c * r^a * y^e`` keyed by ``(a, e)``."""

    __slots__ = ()
    _degree_name = "r_exp"

    def __add__(self, other: RPolynomial) -> RPolynomial:
        d = _common_dim(self, other)
        return RPolynomial(self.padded(d)._terms + other.padded(d)._terms, d)

    def __neg__(self) -> RPolynomial:
        return RPolynomial([(k, -c) for k, c in self._terms], self.d)

    def __sub__(self, other: RPolynomial) -> RPolynomial:
        return self + (-other)

    def __mul__(self, other: RPolynomial | int) -> RPolynomial:
        if isinstance(other, int):
            return RPolynomial([(k, c * other) for k, c in self._terms], self.d)
        d = _common_dim(self, other)
        a, b = self.padded(d), other.padded(d)
        acc: dict[Key, int] = defaultdict(int)
        for (ra, ea), ca in a._terms:
            for (rb, eb), cb in b._terms:
                acc[(ra + rb, tuple(x + y for x, y in zip(ea, eb)))] += ca * cb
        return RPolynomial(acc, d)

    __rmul__ = __mul__

    def format(self) -> str:
        parts = []
        for (a, e), c in self._terms:
            factors = []
            if a == 1:
                factors.append("r")
            elif a > 1:
                factors.append(f"r^{a}")
            mono = _format_monomial(e)
            if mono:
                factors.append(mono)
            parts.append((c, factors))
        return _join_terms(parts)


def _common_dim(a: _SparsePoly, b: _SparsePoly) -> int:
    return max(a.d, b.d)


def _format_monomial(e: Sequence[int]) -> str:
    out = []
    for i, ei in enumerate(e, start=1):
        if ei == 1:
            out.append(f"y{i}")
        elif ei > 1:
            out.append(f"y{i}^{ei}")
    return "*".join(out)


def _join_terms(parts: list[tuple[int, list[str]]]) -> str:
    if not parts:
        return "0"
    chunks = []
    for idx, (c, factors) in enumerate(parts):
        mag = abs(c)
        if factors:
            body = " * ".join(([str(mag)] if mag != 1 else []) + factors)
        else:
            body = str(mag)
        if idx == 0:
            chunks.append(f"-{body}" if c < 0 else body)
        else:
            chunks.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(chunks)


@functools.lru_cache(maxsize=None)
def rising_coefficients(K: int) -> tuple[int, ...]:
    """Coefficients of ``(r - 1 + K)^(K) = r (r + 1) ... (r + K - 1)`` in
    powers of ``r``, lowest first."""
    coeffs = [1]
    for j in range(K):
        # multiply by (r + j)
        nxt = [0] * (len(coeffs) + 1)
        for a, c in enumerate(coeffs):
            nxt[a] += j * c
            nxt[a + 1] += c
        coeffs = nxt
    return tuple(coeffs)


def derive_noncentral_poly(p: Sequence[int]) -> MomentPolynomial:
    """Raw moment ``E[prod eta_i^p_i]`` in the falling-factorial basis.

    One term per ``k`` in the box ``[0, p]`` whose Stirling factors are all
    non-zero: key ``(|k|, k)``, coefficient ``prod_i S(p_i, k_i)``.
    """
    p = as_multiindex(p, "p")
    if not p:
        raise ValueError("p must have at least one coordinate")
    rows = [stirling_row(pi) for pi in p]
    terms = {}
    for k in iter_box(p):
        c = 1
        for row, ki in zip(rows, k):
            c *= row[ki]
            if c == 0:
                break
        if c:
            terms[(sum(k), k)] = c
    return MomentPolynomial(terms, len(p))


def derive_central_poly(p: Sequence[int]) -> RPolynomial:
    """Central moment ``E[prod (eta_i - r y_i)^p_i]`` expanded in ``r`` and ``y``.

    Assembles the binomial/Stirling triple sum with the sign and power of
    ``-r`` folded in, expands each falling factorial into powers of ``r``,
    and collects like terms so all cancellations happen.
    """
    p = as_multiindex(p, "p")
    if not p:
        raise ValueError("p must have at least one coordinate")
    acc: dict[Key, int] = defaultdict(int)
    for ell in iter_box(p):
        shift = sum(pi - li for pi, li in zip(p, ell))
        outer = -1 if shift % 2 else 1
        for pi, li in zip(p, ell):
            outer *= binomial(pi, li)
        rows = [stirling_row(li) for li in ell]
        for k in iter_box(ell):
            c = outer
            for row, ki in zip(rows, k):
                c *= row[ki]
                if c == 0:
                    break
            if c == 0:
                continue
            e = tuple(pi - li + ki for pi, li, ki in zip(p, ell, k))
            for a, rc in enumerate(rising_coefficients(sum(k))):
                if rc:
                    acc[(a + shift, e)] += c * rc
    return RPolynomial(acc, len(p))


def expand_to_r_poly(mp: MomentPolynomial) -> RPolynomial:
    """Rewrite a falling-factorial-basis polynomial in powers of ``r``."""
    acc: dict[Key, int] = defaultdict(int)
    for (K, e), c in mp.items():
        for a, rc in enumerate(rising_coefficients(K)):
            if rc:
                acc[(a, e)] += c * rc
    return RPolynomial(acc, mp.d)


def poly_eval(poly: MomentPolynomial | RPolynomial, r: Scalar, y: Sequence[Scalar]) -> Scalar:
    """Evaluate at ``(r, y)``; exact when the inputs are ``Fraction``/``int``."""
    y = list(y)
    if len(y) != poly.d:
        raise DimensionMismatch(f"y has length {len(y)} but polynomial has d={poly.d}")
    if isinstance(r, int) and not isinstance(r, bool):
        r = Fraction(r)
    zero = r * 0
    total = zero
    ff_cache: dict[int, Scalar] = {}
    for (deg, e), c in poly.items():
        if isinstance(poly, MomentPolynomial):
            if deg not in ff_cache:
                ff_cache[deg] = falling_factorial(r - 1 + deg, deg)
            term = ff_cache[deg] * c
        else:
            term = r**deg * c
        for yi, ei in zip(y, e):
            if ei:
                term *= yi**ei
        total += term
    return total
