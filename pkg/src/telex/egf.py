"""Truncated exponential generating functions over the rationals.

An :class:`Egf` of order N represents ``sum_{j<=N} c_j z^j``.  Internally the
series is kept as its *counts* ``a_j = j! c_j``: products become binomial
convolutions, the derivative is a shift, and every series this package
builds has integer counts, so the hot loops never touch a Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .arith import Number, binomial, factorial, normalize

__all__ = [
    "Egf",
    "IntegralityError",
    "constant",
    "egf_from_monomials",
    "exp_linear",
    "exp_linear_minus_one",
    "variable",
]


class IntegralityError(ArithmeticError):
    """n! [z^n] f was not an integer, so f is not the series it claims to be."""


def _pascal_rows(order: int) -> list[list[int]]:
    rows = [[1]]
    for n in range(1, order + 1):
        prev = rows[-1]
        rows.append([1] + [prev[i - 1] + prev[i] for i in range(1, n)] + [1])
    return rows


class Egf:
    __slots__ = ("_counts",)

    def __init__(self, counts: Iterable[Number]):
        counts = tuple(normalize(Fraction(c) if not isinstance(c, int) else c) for c in counts)
        if not counts:
            raise ValueError("a series needs at least the constant term")
        self._counts = counts

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Number]) -> "Egf":
        return cls(Fraction(c) * factorial(j) for j, c in enumerate(coeffs))

    @property
    def order(self) -> int:
        return len(self._counts) - 1

    @property
    def counts(self) -> tuple[Number, ...]:
        """The values n! [z^n] f for n = 0..order (int where integral)."""
        return self._counts

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a) / factorial(j) for j, a in enumerate(self._counts))

    def __repr__(self) -> str:
        return f"Egf(order={self.order}, coeffs=[{', '.join(str(c) for c in self.coeffs)}])"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Egf):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self) -> int:
        return hash(self._counts)

    def truncate(self, order: int) -> "Egf":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return Egf(self._counts[: order + 1])

    def _aligned(self, other: "Egf") -> tuple[tuple[Number, ...], tuple[Number, ...]]:
        n = min(self.order, other.order) + 1
        return self._counts[:n], other._counts[:n]

    def __add__(self, other: "Egf") -> "Egf":
        a, b = self._aligned(other)
        return Egf(x + y for x, y in zip(a, b))

    def __neg__(self) -> "Egf":
        return Egf(-x for x in self._counts)

    def __sub__(self, other: "Egf") -> "Egf":
        return self + (-other)

    def scale(self, c: Number) -> "Egf":
        return Egf(c * x for x in self._counts)

    def __mul__(self, other: "Egf | int | Fraction") -> "Egf":
        if not isinstance(other, Egf):
            return self.scale(other)
        a, b = self._aligned(other)
        out = []
        for n in range(len(a)):
            acc = 0
            for k in range(n + 1):
                if a[k] and b[n - k]:
                    acc += binomial(n, k) * a[k] * b[n - k]
            out.append(acc)
        return Egf(out)

    __rmul__ = __mul__

    def pow(self, k: int) -> "Egf":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def derivative(self) -> "Egf":
        """d/dz, which for counts is a left shift (order drops by one)."""
        if self.order == 0:
            return constant(0, 0)
        return Egf(self._counts[1:])

    def exp(self) -> "Egf":
        """exp(f) from (exp f)' = f' exp f; f must have zero constant term."""
        if self._counts[0] != 0:
            raise ValueError("exp needs a zero constant term (the result would be irrational)")
        a = self._counts
        N = self.order
        rows = _pascal_rows(max(N - 1, 0))
        b: list[Number] = [1]
        for n in range(N):
            row = rows[n]
            acc = 0
            for k in range(n + 1):
                if a[k + 1]:
                    acc += row[k] * a[k + 1] * b[n - k]
            b.append(acc)
        return Egf(b)

    def compose(self, inner: "Egf") -> "Egf":
        """self(inner(z)) by Horner's rule; inner must vanish at z = 0."""
        if inner._counts[0] != 0:
            raise ValueError("composition needs an inner series with zero constant term")
        order = min(self.order, inner.order)
        inner = inner.truncate(order)
        coeffs = self.coeffs[: order + 1]
        result = constant(coeffs[-1], order)
        for c in reversed(coeffs[:-1]):
            result = result * inner + constant(c, order)
        return result

    def coefficient(self, n: int) -> Fraction:
        return Fraction(self._counts[n]) / factorial(n)

    def count(self, n: int) -> int:
        """n! [z^n] f, which must be an integer."""
        if n > self.order:
            raise ValueError(f"n={n} exceeds truncation order {self.order}")
        value = self._counts[n]
        if not isinstance(value, int):
            raise IntegralityError(f"n! [z^{n}] f = {value} is not an integer")
        return value


def constant(c: Number, order: int) -> Egf:
    return Egf([c] + [0] * order)


def variable(order: int) -> Egf:
    """The series z."""
    return egf_from_monomials([(1, 1)], order)


def egf_from_monomials(terms: Iterable[tuple[int, Number]], order: int) -> Egf:
    coeffs: list[Fraction] = [Fraction(0)] * (order + 1)
    for degree, c in terms:
        if degree < 0 or degree > order:
            raise ValueError(f"degree {degree} outside 0..{order}")
        coeffs[degree] += Fraction(c)
    return Egf.from_coeffs(coeffs)


def exp_linear(a: Number, order: int) -> Egf:
    """e^{a z}: counts a^n."""
    out = [1]
    for _ in range(order):
        out.append(out[-1] * a)
    return Egf(out)


def exp_linear_minus_one(a: Number, order: int) -> Egf:
    """e^{a z} - 1."""
    series = exp_linear(a, order)
    return Egf((0,) + series.counts[1:])
