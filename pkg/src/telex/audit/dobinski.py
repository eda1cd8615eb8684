"""Certified rational enclosures for Dobinski-type infinite sums."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..families import tilde_b, whitney_row

__all__ = ["Enclosure", "dobinski_eval", "exp_enclosure"]

DEFAULT_TOLERANCE = Fraction(1, 10**6)


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def __str__(self) -> str:
        return f"[{_decimal(self.lo, floor=True)}, {_decimal(self.hi, floor=False)}]"


def _decimal(q: Fraction, floor: bool, digits: int = 12) -> str:
    scale = 10**digits
    num = q.numerator * scale
    v = num // q.denominator if floor else -((-num) // q.denominator)
    sign = "-" if v < 0 else ""
    v = abs(v)
    return f"{sign}{v // scale}.{v % scale:0{digits}d}"


@lru_cache(maxsize=64)
def exp_enclosure(a: Fraction, precision_bits: int = 200) -> Enclosure:
    """Rational bounds on e^a for rational a >= 0 from a Taylor sum and a
    geometric bound on its tail."""
    if a < 0:
        raise ValueError("exp_enclosure wants a >= 0")
    threshold = Fraction(1, 1 << precision_bits)
    partial = Fraction(0)
    term = Fraction(1)
    j = 0
    while True:
        partial += term
        j += 1
        term = term * a / j
        # remaining sum <= term / (1 - a/(j+1)) once j + 1 > a
        if j + 1 > a:
            tail = term / (1 - a / (j + 1))
            if tail < threshold:
                return Enclosure(partial, partial + tail)


@dataclass(frozen=True)
class DobinskiResult:
    variant: str
    r: int
    lam: int
    n: int
    terms: int
    enclosure: Enclosure | None
    target: int
    status: str

    @property
    def contains_target(self) -> bool:
        return self.enclosure is not None and self.target in self.enclosure


def _canonical_sum(a: Fraction, R: int, n: int, terms: int) -> tuple[Fraction, Fraction | None]:
    partial = Fraction(0)
    weight = Fraction(1)  # a^m / m!
    for m in range(terms):
        partial += weight * (2 * m + R) ** n
        weight = weight * a / (m + 1)
    M = terms
    first_tail = weight * (2 * M + R) ** n
    ratio = a / (M + 1) * Fraction(2 * M + 2 + R, 2 * M + R) ** n
    if ratio >= 1:
        return partial, None
    return partial, first_tail / (1 - ratio)


def _printed_sum(a: Fraction, constant: int, terms: int) -> tuple[Fraction, Fraction | None]:
    partial = Fraction(0)
    weight = Fraction(1)
    for m in range(terms):
        partial += weight
        weight = weight * a / (m + 1)
    ratio = a / (terms + 1)
    if ratio >= 1:
        return partial * constant, None
    return partial * constant, weight * constant / (1 - ratio)


def dobinski_eval(
    variant: str,
    r: int,
    lam: int,
    n: int,
    terms: int = 40,
    tolerance: Fraction = DEFAULT_TOLERANCE,
) -> DobinskiResult:
    """Enclose the Dobinski-type sum for the sequence tilde_b((1+lam) r, lam, n).

    ``printed``: e^{-lam/2} sum_m (lam/2)^m/m! * sum_k W_{2, r lam}(n,k) 2^(k+1)
    exactly as displayed (the inner sum does not depend on m).
    ``canonical``: e^{-lam/2} sum_m (lam/2)^m/m! (2m + (1+lam) r)^n.

    Status is ``holds``/``fails`` by containment of the target, or
    ``inconclusive`` when the enclosure is wider than ``tolerance``.
    """
    if terms < 1:
        raise ValueError("terms must be at least 1")
    if r < 0 or lam < 0 or n < 0:
        raise ValueError("r, lam and n must be non-negative")
    a = Fraction(lam, 2)
    R = (1 + lam) * r
    if variant == "canonical":
        partial, tail = _canonical_sum(a, R, n, terms)
    elif variant == "printed":
        constant = sum(w * 2 ** (k + 1) for k, w in enumerate(whitney_row(2, r * lam, n)))
        partial, tail = _printed_sum(a, constant, terms)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    target = tilde_b(R, lam, n)
    if tail is None:
        return DobinskiResult(variant, r, lam, n, terms, None, target, "inconclusive")
    e_pos = exp_enclosure(a)
    enclosure = Enclosure(partial / e_pos.hi, (partial + tail) / e_pos.lo)
    if enclosure.width > tolerance:
        status = "inconclusive"
    else:
        status = "holds" if target in enclosure else "fails"
    return DobinskiResult(variant, r, lam, n, terms, enclosure, target, status)

