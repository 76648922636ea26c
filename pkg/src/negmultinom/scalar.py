"""Dual-mode scalars: ``float`` or exact ``fractions.Fraction``.

The mode is fixed when a value enters the library; nothing here converts
between the two implicitly.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union[float, Fraction]


def to_exact(value) -> Fraction:
    """Convert ``value`` to a ``Fraction``.

    Strings may be ``"a/b"``, integers or decimal literals.  Floats are
    converted exactly from their binary value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse {value!r} as a rational") from exc
    return Fraction(float(value))


def to_float(value) -> float:
    if isinstance(value, str):
        s = value.strip()
        if "/" in s:
            return float(Fraction(s))
        return float(s)
    return float(value)


def coerce(value, exact: bool) -> Scalar:
    return to_exact(value) if exact else to_float(value)


def is_exact(value) -> bool:
    return isinstance(value, Fraction)


def format_scalar(value: Scalar) -> str:
    """Lossless text form: ``"a/b"`` for rationals, 17 significant digits
    for floats."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return format(float(value), ".17g")
