"""Cross-checks of closed forms against the oracles.

Used by the ``verify`` subcommand and by the acceptance suite.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Literal

import numpy as np

from .corpus import golden_record, printed_poly
from .distribution import Params, validate_params
from .moments import central_moment, factorial_moment, noncentral_moment
from .multiindex import as_multiindex
from .oracle import mc_factorial_moment, mc_moment, truncated_moment
from .symbolic import poly_eval

__all__ = ["SCHEMA_VERSION", "formula_value", "verify_moment", "confirm_misprint"]

SCHEMA_VERSION = 1
MomentKind = Literal["noncentral", "central", "factorial"]

REL_TOL = 1e-8
MC_SIGMAS = 5.0


def formula_value(params: Params, p: Sequence[int], kind: MomentKind):
    if kind == "noncentral":
        return noncentral_moment(params, p)
    if kind == "central":
        return central_moment(params, p)
    if kind == "factorial":
        return factorial_moment(params, p)
    raise ValueError(f"unknown moment kind {kind!r}")


def truncated_agrees(formula: float, estimate, rel: float = REL_TOL) -> bool:
    """``|formula - truncated| <= rel * |formula|``.

    A formula value of exactly zero (first central moments) is checked
    against the oracle's own tail bound plus a rounding allowance instead.
    """
    diff = abs(formula - estimate.value)
    if formula == 0:
        return diff <= estimate.bound + 1e-12
    return diff <= rel * abs(formula)


def verify_moment(
    params: Params,
    p: Sequence[int],
    kind: MomentKind = "noncentral",
    tol: float = 1e-10,
    mc_n: int = 10**6,
    seed: int = 0,
    *,
    draws: np.ndarray | None = None,
) -> dict:
    """Evaluate the closed form and both oracles; return a JSON-ready report."""
    p = params.check_dim(p, "p")
    formula = float(formula_value(params, p, kind))
    if kind == "factorial":
        # the truncated oracle sums plain monomials; factorial moments are
        # checked by Monte Carlo only
        trunc_value, trunc_bound, trunc_ok = None, None, True
        mc = mc_factorial_moment(params, p, mc_n, seed, draws=draws)
    else:
        centered = kind == "central"
        trunc = truncated_moment(params, p, centered, tol)
        trunc_value, trunc_bound = trunc.value, trunc.bound
        trunc_ok = truncated_agrees(formula, trunc)
        mc = mc_moment(params, p, centered, mc_n, seed, draws=draws)
    if mc.bound > 0:
        mc_ok = abs(formula - mc.value) <= MC_SIGMAS * mc.bound
    else:
        mc_ok = abs(formula - mc.value) <= 1e-12 * max(1.0, abs(formula))
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "p": list(p),
        "formula": formula,
        "truncated": trunc_value,
        "truncated_bound": trunc_bound,
        "mc": mc.value,
        "mc_se": mc.bound,
        "pass": bool(trunc_ok and mc_ok),
    }


def confirm_misprint(p: Sequence[int], r: float = 2.0, x: Sequence[float] | None = None,
                     tol: float = 1e-12) -> dict:
    """Decide between a printed non-central formula and the derived one.

    Evaluates both at ``(r, x)`` and compares with the truncated-sum
    oracle.  ``x`` needs one entry per variable of the printed formula,
    which may exceed ``len(p)``; by default a decreasing sequence with
    total mass 0.2 is used.
    """
    p = as_multiindex(p, "p")
    golden_record(p, "noncentral")
    printed = printed_poly(p, "noncentral")
    D = printed.d
    if x is None:
        w = np.arange(D, 0, -1, dtype=float)
        x = list(0.2 * w / w.sum())
    params = validate_params(r, x)
    full_p = tuple(p) + (0,) * (D - len(p))
    derived = float(noncentral_moment(params, full_p))
    printed_value = float(poly_eval(printed, float(params.r), [float(v) for v in params.y]))
    oracle = truncated_moment(params, full_p, False, tol)
    return {
        "p": list(p),
        "dimension": D,
        "derived": derived,
        "printed": printed_value,
        "truncated": oracle.value,
        "truncated_bound": oracle.bound,
        "derived_agrees": truncated_agrees(derived, oracle),
        "printed_agrees": truncated_agrees(printed_value, oracle),
    }
