from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from telex.egf import (
    Egf,
    IntegralityError,
    constant,
    egf_from_monomials,
    exp_linear,
    exp_linear_minus_one,
    variable,
)

ORDER = 6
rats = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def series(zero_constant=False):
    return st.lists(rats, min_size=ORDER + 1, max_size=ORDER + 1).map(
        lambda cs: Egf.from_coeffs([0 if zero_constant and i == 0 else c for i, c in enumerate(cs)])
    )


def naive_mul(f, g):
    """Ordinary Cauchy product of the plain coefficients."""
    a, b = f.coeffs, g.coeffs
    n = min(len(a), len(b))
    return Egf.from_coeffs([sum(a[i] * b[j - i] for i in range(j + 1)) for j in range(n)])


@given(series(), series())
def test_mul_matches_cauchy_product(f, g):
    assert f * g == naive_mul(f, g)


@given(series(), series())
def test_mul_commutes(f, g):
    assert f * g == g * f


@settings(max_examples=40)
@given(series(), series(), series())
def test_mul_associates(f, g, h):
    assert (f * g) * h == f * (g * h)


@settings(max_examples=40)
@given(series(True), series(True))
def test_exp_of_sum(f, g):
    assert (f + g).exp() == f.exp() * g.exp()


@given(series(True))
def test_exp_derivative(f):
    e = f.exp()
    assert e.derivative() == f.derivative() * e.truncate(ORDER - 1)


@given(series(), series())
def test_product_rule(f, g):
    lhs = (f * g).derivative()
    rhs = f.derivative() * g.truncate(ORDER - 1) + f.truncate(ORDER - 1) * g.derivative()
    assert lhs == rhs


@given(series(), st.integers(0, 4))
def test_pow_is_repeated_product(f, k):
    acc = constant(1, ORDER)
    for _ in range(k):
        acc = acc * f
    assert f.pow(k) == acc


@given(series())
def test_compose_with_z_is_identity(f):
    assert f.compose(variable(ORDER)) == f


def test_exp_of_z_counts_ones():
    assert variable(5).exp().counts == (1,) * 6


def test_compose_exp_into_exp():
    # exp(e^z - 1) has the Bell numbers as counts
    bell = variable(7).exp().compose(exp_linear_minus_one(1, 7))
    assert bell.counts == (1, 1, 2, 5, 15, 52, 203, 877)


def test_exp_linear_counts():
    assert exp_linear(3, 4).counts == (1, 3, 9, 27, 81)
    assert exp_linear_minus_one(2, 3).counts == (0, 2, 4, 8)


def test_coefficient_and_count():
    f = egf_from_monomials([(0, 1), (2, Fraction(1, 2))], 3)
    assert f.coefficient(2) == Fraction(1, 2)
    assert f.count(2) == 1
    g = Egf.from_coeffs([0, 0, Fraction(1, 3)])
    with pytest.raises(IntegralityError):
        g.count(2)
    with pytest.raises(ValueError):
        f.count(4)


def test_errors():
    with pytest.raises(ValueError):
        constant(1, 3).exp()
    with pytest.raises(ValueError):
        variable(3).compose(constant(1, 3))
    with pytest.raises(ValueError):
        egf_from_monomials([(5, 1)], 3)
    with pytest.raises(ValueError):
        variable(3).pow(-1)
    with pytest.raises(ValueError):
        variable(2).truncate(3)
