"""Exact integer, rational and Gaussian-integer arithmetic.

Python ints are already arbitrary precision, so ``ExactInt`` is simply
``int``; rationals are :class:`fractions.Fraction`, which keeps itself
reduced with a positive denominator.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

ExactInt = int
ExactRat = Fraction
Number = Union[int, Fraction]

__all__ = [
    "ExactInt",
    "ExactRat",
    "GaussInt",
    "binomial",
    "factorial",
    "falling_factorial",
    "format_rat",
    "normalize",
    "parse_rat",
]


class _FactorialTable:
    """Growable table of n! shared by every caller."""

    def __init__(self) -> None:
        self._values = [1]
        self._lock = threading.Lock()

    def get(self, n: int) -> int:
        values = self._values
        if n < len(values):
            return values[n]
        with self._lock:
            values = self._values
            acc = values[-1]
            for i in range(len(values), n + 1):
                acc *= i
                values.append(acc)
            return values[n]


_FACTORIALS = _FactorialTable()


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return _FACTORIALS.get(n)


def binomial(n: int, k: int) -> int:
    """C(n, k), zero when k lies outside 0..n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def falling_factorial(n: int, j: int) -> int:
    """n (n-1) ... (n-j+1); 1 for j == 0 and 0 once a factor hits zero."""
    if j < 0:
        raise ValueError(f"falling factorial length must be non-negative, got {j}")
    acc = 1
    for i in range(j):
        acc *= n - i
        if acc == 0:
            break
    return acc


def normalize(value: Number) -> Number:
    """Collapse integral Fractions to int so integer work stays on the fast path."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def parse_rat(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rat(value: Number) -> str:
    return str(Fraction(value))


@dataclass(frozen=True)
class GaussInt:
    """An element re + im*i of Z[i]."""

    re: int = 0
    im: int = 0

    @classmethod
    def coerce(cls, value: "GaussInt | int") -> "GaussInt":
        if isinstance(value, GaussInt):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian integer")

    def __add__(self, other: "GaussInt | int") -> "GaussInt":
        other = GaussInt.coerce(other)
        return GaussInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.re, -self.im)

    def __sub__(self, other: "GaussInt | int") -> "GaussInt":
        return self + (-GaussInt.coerce(other))

    def __rsub__(self, other: "GaussInt | int") -> "GaussInt":
        return GaussInt.coerce(other) - self

    def __mul__(self, other: "GaussInt | int") -> "GaussInt":
        other = GaussInt.coerce(other)
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GaussInt":
        if k < 0:
            raise ValueError("negative powers leave Z[i]")
        result = GaussInt(1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_real(self) -> bool:
        return self.im == 0

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I = GaussInt(0, 1)
