import itertools
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from negmultinom import (
    DimensionMismatch,
    central_moment,
    central_moment_from_noncentral,
    factorial_moment,
    mean_vector,
    noncentral_moment,
    pmf,
    validate_params,
)
from negmultinom.multiindex import multiindices_upto


def _brute_expectation(params, g, K):
    """Sum g(k) * pmf(k) over the box [0, K]^d (no tail handling)."""
    return sum(g(k) * pmf(params, k) for k in itertools.product(range(K + 1), repeat=params.d))


def test_factorial_moment_examples(base_params):
    assert factorial_moment(base_params, [1, 1]) == pytest.approx(1.5, rel=1e-15)
    assert factorial_moment(base_params, [0, 0]) == 1.0
    p = validate_params("5/2", ["1/3"], exact=True)  # y = 1/2
    assert factorial_moment(p, [2]) == Fraction(35, 16)


def test_factorial_moment_brute_force(base_params):
    brute = _brute_expectation(base_params, lambda k: k[0] * k[1], 120)
    assert factorial_moment(base_params, [1, 1]) == pytest.approx(brute, rel=1e-12)


@pytest.mark.parametrize("p,expected", [([1, 0], 1.0), ([2, 0], 2.5), ([3, 0], 8.5), ([0, 0], 1.0)])
def test_noncentral_examples(base_params, p, expected):
    assert noncentral_moment(base_params, p) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("p", [[1, 0], [2, 0], [3, 0], [1, 2]])
def test_noncentral_brute_force(base_params, p):
    brute = _brute_expectation(base_params, lambda k: k[0] ** p[0] * k[1] ** p[1], 140)
    assert noncentral_moment(base_params, p) == pytest.approx(brute, rel=1e-11)


@pytest.mark.parametrize(
    "p,expected", [([2, 0], 1.5), ([1, 1], 0.5), ([1, 0], 0.0), ([0, 1], 0.0), ([3, 0], 3.0)]
)
def test_central_examples(base_params, p, expected):
    assert central_moment(base_params, p) == pytest.approx(expected, rel=1e-14, abs=1e-14)


def test_central_brute_force(base_params):
    brute = _brute_expectation(base_params, lambda k: (k[0] - 1) ** 2 * (k[1] - 1), 140)
    assert central_moment(base_params, [2, 1]) == pytest.approx(brute, rel=1e-11)


def test_exact_examples(base_exact):
    assert central_moment(base_exact, [2, 0]) == Fraction(3, 2)
    assert central_moment(base_exact, [1, 0]) == 0
    assert noncentral_moment(base_exact, [3, 0]) == Fraction(17, 2)


def test_mean_vector():
    assert mean_vector(validate_params(2, [0.25, 0.25])) == [1.0, 1.0]
    assert mean_vector(validate_params(1, [0.0])) == [0.0]
    assert mean_vector(validate_params(3, ["1/3"], exact=True)) == [Fraction(3, 2)]


def test_dimension_mismatch(base_params):
    for fn in (factorial_moment, noncentral_moment, central_moment):
        with pytest.raises(DimensionMismatch):
            fn(base_params, [1, 2, 3])


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("x", [["1/3"], ["1/5", "1/7"], ["1/10", "1/6", "1/8"]])
def test_recentering_identity_exact(r, x):
    params = validate_params(r, x, exact=True)
    for p in multiindices_upto(len(x), 6):
        assert central_moment(params, p) == central_moment_from_noncentral(params, p)


def test_marginalization_by_zero():
    full = validate_params("5/2", ["1/10", "1/5", "1/8"], exact=True)
    for p in [(2, 0, 3), (0, 4, 1), (1, 0, 0)]:
        keep = [i for i, v in enumerate(p) if v]
        sub_y = [full.y[i] for i in keep]
        # params on the kept coordinates with the same y: x_i = y_i / (1 + sum y)
        s = sum(sub_y)
        sub = validate_params(full.r, [yi / (1 + s) for yi in sub_y], exact=True)
        assert sub.y == tuple(sub_y)
        assert noncentral_moment(full, p) == noncentral_moment(sub, [p[i] for i in keep])


@pytest.mark.parametrize("r", [0.5, 1.0, 2.5])
@pytest.mark.parametrize("x", [0.1, 0.3, 0.5])
def test_negative_binomial_reduction(r, x):
    params = validate_params(r, [x])
    y = x / (1 - x)
    mean = noncentral_moment(params, [1])
    var = central_moment(params, [2])
    assert mean == pytest.approx(r * y, rel=1e-15)
    assert var == pytest.approx(r * y * (1 + y), rel=1e-14)
    K = 400
    brute_mean = sum(k * pmf(params, [k]) for k in range(K))
    brute_var = sum((k - r * y) ** 2 * pmf(params, [k]) for k in range(K))
    assert mean == pytest.approx(brute_mean, rel=1e-9)
    assert var == pytest.approx(brute_var, rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(
    r=st.fractions(min_value=Fraction(1, 4), max_value=5, max_denominator=8),
    raw=st.lists(st.integers(min_value=0, max_value=20), min_size=1, max_size=4),
    p=st.lists(st.integers(min_value=0, max_value=3), min_size=4, max_size=4),
    data=st.data(),
)
def test_permutation_equivariance(r, raw, p, data):
    d = len(raw)
    x = [Fraction(v, 50 * d) for v in raw]
    p = p[:d]
    sigma = data.draw(st.permutations(range(d)))
    a = validate_params(r, x, exact=True)
    b = validate_params(r, [x[s] for s in sigma], exact=True)
    sp = [p[s] for s in sigma]
    assert noncentral_moment(a, p) == noncentral_moment(b, sp)
    assert central_moment(a, p) == central_moment(b, sp)


@settings(max_examples=60, deadline=None)
@given(
    r=st.floats(min_value=0.05, max_value=10),
    x=st.lists(st.floats(min_value=0, max_value=0.3), min_size=1, max_size=3),
    data=st.data(),
)
def test_nonnegativity(r, x, data):
    params = validate_params(r, x)
    p = data.draw(st.lists(st.integers(0, 4), min_size=len(x), max_size=len(x)))
    assert noncentral_moment(params, p) >= 0
    i = data.draw(st.integers(0, len(x) - 1))
    order = data.draw(st.sampled_from([2, 4, 6]))
    single = [0] * len(x)
    single[i] = order
    assert central_moment(params, single) >= -1e-12 * max(1.0, noncentral_moment(params, single))


def test_float_agrees_with_exact():
    exact = validate_params("5/2", ["1/10", "3/10"], exact=True)
    flt = validate_params(2.5, [0.1, 0.3])
    for p in multiindices_upto(2, 6):
        assert noncentral_moment(flt, p) == pytest.approx(float(noncentral_moment(exact, p)), rel=1e-12)
        assert central_moment(flt, p) == pytest.approx(
            float(central_moment(exact, p)), rel=1e-9, abs=1e-12
        )


def test_concurrent_evaluation_matches_serial():
    params = validate_params(1.5, [0.1, 0.2, 0.15])
    ps = list(multiindices_upto(3, 5))
    serial = [central_moment(params, p) for p in ps]
    with ThreadPoolExecutor(max_workers=4) as pool:
        threaded = list(pool.map(lambda p: central_moment(params, p), ps))
    for a, b in zip(serial, threaded):
        assert b == pytest.approx(a, rel=1e-12, abs=1e-15)
