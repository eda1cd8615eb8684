from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from telex.arith import (
    GaussInt,
    binomial,
    factorial,
    falling_factorial,
    format_rat,
    normalize,
    parse_rat,
)


def pascal(n, k):
    if k < 0 or k > n:
        return 0
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row[k]


def test_factorial_small():
    assert [factorial(n) for n in range(8)] == [1, 1, 2, 6, 24, 120, 720, 5040]


def test_factorial_negative():
    with pytest.raises(ValueError):
        factorial(-1)


def test_factorial_grows_table_out_of_order():
    big = factorial(300)
    assert big == 300 * factorial(299)
    assert factorial(5) == 120


@given(st.integers(0, 40), st.integers(-3, 45))
def test_binomial_matches_pascal(n, k):
    assert binomial(n, k) == pascal(n, k)


@given(st.integers(0, 60), st.integers(0, 60))
def test_binomial_symmetry(n, k):
    assert binomial(n, k) == binomial(n, n - k)


def test_falling_factorial():
    assert falling_factorial(5, 0) == 1
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(3, 5) == 0
    assert falling_factorial(-2, 2) == 6
    with pytest.raises(ValueError):
        falling_factorial(3, -1)


@given(st.fractions())
def test_rat_round_trip(q):
    assert parse_rat(format_rat(q)) == q


def test_normalize():
    assert type(normalize(Fraction(6, 3))) is int
    assert normalize(Fraction(1, 2)) == Fraction(1, 2)


gauss = st.builds(GaussInt, st.integers(-50, 50), st.integers(-50, 50))


@given(gauss, gauss)
def test_gauss_matches_complex(a, b):
    for got, want in ((a + b, complex(a.re, a.im) + complex(b.re, b.im)),
                      (a - b, complex(a.re, a.im) - complex(b.re, b.im)),
                      (a * b, complex(a.re, a.im) * complex(b.re, b.im))):
        assert complex(got.re, got.im) == want


@given(gauss, st.integers(0, 6))
def test_gauss_power(a, k):
    acc = GaussInt(1, 0)
    for _ in range(k):
        acc = acc * a
    assert a**k == acc


def test_i_squared():
    i = GaussInt(0, 1)
    assert i * i == GaussInt(-1, 0)
    assert (i**4).is_real()
