"""Number families around the telephone exchange problem.

Every family has one canonical route (the function named after it).  Where a
second analytic route exists it is exposed as ``<family>_egf`` (a series
builder) so the identity auditor can compare the two without going in a
circle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .arith import GaussInt, binomial, factorial, falling_factorial
from .egf import (
    Egf,
    constant,
    egf_from_monomials,
    exp_linear,
    exp_linear_minus_one,
)

__all__ = [
    "Family",
    "FamilyQuery",
    "SequenceTable",
    "bessel2",
    "bessel_coeff",
    "dowling",
    "evaluate",
    "family_egf",
    "gen_b1",
    "gen_b_lambda",
    "hermite_coeffs",
    "r_bell",
    "r_bessel_nk",
    "r_bessel_total",
    "r_stirling",
    "sequence",
    "stirling2",
    "t_r_lambda",
    "t_r_nk",
    "t_r_total",
    "telephone",
    "telephone_recurrence",
    "telephone_via_hermite",
    "tilde_b",
    "tilde_t",
    "whitney",
    "whitney_row",
]


class ConsistencyError(ArithmeticError):
    """Two routes that must agree did not, or an exact division was inexact."""


def _check_nat(**values: int) -> None:
    for name, v in values.items():
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"{name} must be a non-negative integer, got {v!r}")


def _exact_div(num: int, den: int) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise ConsistencyError(f"{num}/{den} is not an integer")
    return q


# ---------------------------------------------------------------------------
# series kernels


def _poly(terms: list[tuple[int, int | Fraction]], order: int) -> Egf:
    """A polynomial truncated at ``order`` (terms beyond it are dropped)."""
    return egf_from_monomials([(d, c) for d, c in terms if d <= order], order)


def _bessel_kernel(order: int) -> Egf:
    """z + z^2/2."""
    return _poly([(1, 1), (2, Fraction(1, 2))], order)


def _one_plus_z_pow(r: int, order: int) -> Egf:
    return _poly([(0, 1), (1, 1)], order).pow(r)


# ---------------------------------------------------------------------------
# Bessel numbers and telephone numbers


def bessel_coeff(n: int, k: int) -> int:
    """(2n-k)! / (2^(n-k) k! (n-k)!)."""
    _check_nat(n=n, k=k)
    if k > n:
        raise ValueError(f"Bessel coefficient needs k <= n, got n={n}, k={k}")
    num = factorial(2 * n - k)
    den = (1 << (n - k)) * factorial(k) * factorial(n - k)
    q, rem = divmod(num, den)
    if rem:
        raise ConsistencyError(f"B_{{{n},{k}}} is not integral")
    return q


def bessel2(n: int, k: int) -> int:
    """Partitions of [n] into k blocks of size at most two."""
    _check_nat(n=n, k=k)
    j = 2 * k - n
    if j < 0 or j > k:
        return 0
    return bessel_coeff(k, j)


def telephone(n: int) -> int:
    _check_nat(n=n)
    return sum(bessel2(n, k) for k in range((n + 1) // 2, n + 1))


def telephone_recurrence(n: int) -> int:
    """T_{n+1} = T_n + n T_{n-1}, bottom-up."""
    _check_nat(n=n)
    prev, cur = 0, 1
    for i in range(n):
        prev, cur = cur, cur + i * prev
    return cur


@lru_cache(maxsize=None)
def hermite_coeffs(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the probabilists' He_n.

    Differentiating exp(xt - t^2/2) in t gives He_{n+1} = x He_n - n He_{n-1}.
    """
    _check_nat(n=n)
    prev: list[int] = []
    cur = [1]
    for i in range(n):
        nxt = [0] + cur
        for j, c in enumerate(prev):
            nxt[j] -= i * c
        prev, cur = cur, nxt
    return tuple(cur)


def telephone_via_hermite(n: int) -> int:
    """i^n He_n(-i) in exact Gaussian integers."""
    x = GaussInt(0, -1)
    value = GaussInt(0, 0)
    for c in reversed(hermite_coeffs(n)):
        value = value * x + c
    value = GaussInt(0, 1) ** n * value
    if not value.is_real() or value.re < 0:
        raise ConsistencyError(f"i^{n} He_{n}(-i) = {value} is not a non-negative integer")
    return value.re


# ---------------------------------------------------------------------------
# r-Bessel and r-telephone numbers


def r_bessel_egf(n_order: int, k: int, r: int) -> Egf:
    """(1+z)^r (z + z^2/2)^k / k!."""
    return (_one_plus_z_pow(r, n_order) * _bessel_kernel(n_order).pow(k)).scale(
        Fraction(1, factorial(k))
    )


def r_bessel_nk(n: int, k: int, r: int) -> int:
    _check_nat(n=n, k=k, r=r)
    if k > n:
        return 0
    return r_bessel_egf(n, k, r).count(n)


@lru_cache(maxsize=None)
def _r_bessel_row(n: int, r: int) -> tuple[int, ...]:
    head = _one_plus_z_pow(r, n).counts
    kernel = _bessel_kernel(n)
    power = constant(1, n)
    row = []
    for k in range(n + 1):
        total = sum(binomial(n, j) * head[j] * power.counts[n - j] for j in range(n + 1))
        row.append(_exact_div(total, factorial(k)))
        power = power * kernel
    return tuple(row)


def r_bessel_total(n: int, r: int) -> int:
    _check_nat(n=n, r=r)
    return sum(_r_bessel_row(n, r))


def r_bessel_total_egf(order: int, r: int) -> Egf:
    """(1+z)^r e^{z + z^2/2}."""
    return _one_plus_z_pow(r, order) * _bessel_kernel(order).exp()


def t_r_egf(order: int, k: int, r: int) -> Egf:
    """e^{rz} (z + z^2/2)^k / k!."""
    return (exp_linear(r, order) * _bessel_kernel(order).pow(k)).scale(Fraction(1, factorial(k)))


def t_r_nk(n: int, k: int, r: int) -> int:
    _check_nat(n=n, k=k, r=r)
    if k > n:
        return 0
    return t_r_egf(n, k, r).count(n)


@lru_cache(maxsize=None)
def _t_r_row(n: int, r: int) -> tuple[int, ...]:
    kernel = _bessel_kernel(n)
    power = constant(1, n)
    row = []
    for k in range(n + 1):
        total = sum(binomial(n, j) * r**j * power.counts[n - j] for j in range(n + 1))
        row.append(_exact_div(total, factorial(k)))
        power = power * kernel
    return tuple(row)


def t_r_total(n: int, r: int) -> int:
    _check_nat(n=n, r=r)
    return sum(_t_r_row(n, r))


def t_r_total_egf(order: int, r: int) -> Egf:
    """e^{(r+1)z + z^2/2}."""
    return _poly([(1, r + 1), (2, Fraction(1, 2))], order).exp()


# ---------------------------------------------------------------------------
# r-Stirling, r-Whitney, r-Dowling, r-Bell


def r_stirling_egf(order: int, k: int, r: int) -> Egf:
    """e^{rz} (e^z - 1)^k / k!."""
    return (exp_linear(r, order) * exp_linear_minus_one(1, order).pow(k)).scale(
        Fraction(1, factorial(k))
    )


@lru_cache(maxsize=None)
def r_stirling(n: int, k: int, r: int) -> int:
    """Partitions of [n+r] into k+r blocks with the first r elements apart."""
    _check_nat(n=n, r=r)
    if k < 0 or k > n:
        return 0
    return r_stirling_egf(n, k, r).count(n)


def stirling2(n: int, k: int) -> int:
    return r_stirling(n, k, 0)


@lru_cache(maxsize=None)
def whitney_row(m: int, r: int, n: int) -> tuple[int, ...]:
    """W_{m,r}(n, k) for k = 0..n from the alternating closed form."""
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    _check_nat(r=r, n=n)
    powers = [(m * j + r) ** n for j in range(n + 1)]
    row = []
    for k in range(n + 1):
        acc = 0
        for t in range(k + 1):
            term = binomial(k, t) * powers[k - t]
            acc += -term if t & 1 else term
        q, rem = divmod(acc, m**k * factorial(k))
        if rem:
            raise ConsistencyError(f"W_{{{m},{r}}}({n},{k}) closed form is not integral")
        row.append(q)
    return tuple(row)


def whitney(m: int, r: int, n: int, k: int) -> int:
    if k < 0 or k > n:
        _check_nat(n=n)
        return 0
    return whitney_row(m, r, n)[k]


def dowling_egf(order: int, m: int, r: int, x: int) -> Egf:
    """exp(rz + x (e^{mz} - 1) / m)."""
    return (_poly([(1, r)], order) + exp_linear_minus_one(m, order).scale(Fraction(x, m))).exp()


@lru_cache(maxsize=None)
def _dowling_cached(m: int, r: int, x: int, n: int) -> int:
    value = sum(w * x**k for k, w in enumerate(whitney_row(m, r, n)))
    if x >= 0:
        alt = dowling_egf(n, m, r, x).count(n)
        if alt != value:
            raise ConsistencyError(
                f"D_{{{m},{r}}}^{x}({n}): Whitney sum {value} != series {alt}"
            )
    return value


def dowling(m: int, r: int, x: int, n: int) -> int:
    """sum_k W_{m,r}(n,k) x^k, cross-checked against the series when x >= 0."""
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    _check_nat(r=r, n=n)
    return _dowling_cached(m, r, x, n)


def r_bell_egf(order: int, lam: int, r: int) -> Egf:
    """exp(lam (e^z - 1) + r z)."""
    return (_poly([(1, r)], order) + exp_linear_minus_one(1, order).scale(lam)).exp()


@lru_cache(maxsize=None)
def r_bell(lam: int, r: int, n: int) -> int:
    """r-Bell polynomial value; lam may be any integer (the series is polynomial in it)."""
    _check_nat(r=r, n=n)
    return r_bell_egf(n, lam, r).count(n)


# ---------------------------------------------------------------------------
# generalized r-Bessel numbers


@lru_cache(maxsize=None)
def _gen_b1_table(r: int, n: int) -> tuple[int, ...]:
    values = [1]
    for j in range(n):
        acc = 2 * r * values[j]
        for k in range(j + 1):
            acc += binomial(j, k) * (1 << k) * values[j - k]
        values.append(acc)
    return tuple(values)


def gen_b1(r: int, n: int) -> int:
    """Partitions of [n+r], first r apart, blocks matched in pairs, no two
    distinguished blocks matched; computed by the two-case recurrence."""
    _check_nat(r=r, n=n)
    return _gen_b1_table(r, n)[n]


def gen_b1_egf(order: int, r: int) -> Egf:
    """exp(2rz + (e^{2z} - 1)/2)."""
    return (_poly([(1, 2 * r)], order) + exp_linear_minus_one(2, order).scale(Fraction(1, 2))).exp()


@lru_cache(maxsize=None)
def _gen_b0_lambda_table(lam: int, n: int) -> tuple[int, ...]:
    values = [1]
    for j in range(n):
        prev = values[j - 1] if j >= 1 else 0
        values.append(lam * values[j] + j * lam * prev)
    return tuple(values)


def gen_b_lambda(r: int, lam: int, n: int) -> int:
    """Size-<=2 blocks, first r apart, each free block in one of lam sections."""
    _check_nat(r=r, lam=lam, n=n)
    base = _gen_b0_lambda_table(lam, n)
    return sum(
        binomial(r, i) * falling_factorial(n, i) * base[n - i] for i in range(min(r, n) + 1)
    )


def gen_b_lambda_egf(order: int, r: int, lam: int) -> Egf:
    """(1+z)^r exp(lam (z + z^2/2))."""
    return _one_plus_z_pow(r, order) * _bessel_kernel(order).scale(lam).exp()


def tilde_b(r: int, lam: int, n: int) -> int:
    """sum_k W_{2,r}(n,k) lam^k."""
    _check_nat(r=r, lam=lam, n=n)
    return sum(w * lam**k for k, w in enumerate(whitney_row(2, r, n)))


def tilde_b_egf(order: int, r: int, lam: int) -> Egf:
    """exp(rz + lam (e^{2z} - 1)/2)."""
    return dowling_egf(order, 2, r, lam)


@lru_cache(maxsize=None)
def _t_r_lambda_table(r: int, lam: int, n: int) -> tuple[int, ...]:
    values = [1]
    for j in range(n):
        prev = values[j - 1] if j >= 1 else 0
        values.append((r + lam) * values[j] + j * lam * prev)
    return tuple(values)


def t_r_lambda(r: int, lam: int, n: int) -> int:
    _check_nat(r=r, lam=lam, n=n)
    return _t_r_lambda_table(r, lam, n)[n]


def t_r_lambda_egf(order: int, r: int, lam: int) -> Egf:
    """exp((r + lam) z + lam z^2 / 2)."""
    return _poly([(1, r + lam), (2, Fraction(lam, 2))], order).exp()


def tilde_t_egf(order: int, r: int, lam: int) -> Egf:
    """exp(r (e^z - 1) + lam (e^{2z} - 1)/2)."""
    inner = exp_linear_minus_one(1, order).scale(r) + exp_linear_minus_one(2, order).scale(
        Fraction(lam, 2)
    )
    return inner.exp()


@lru_cache(maxsize=None)
def tilde_t(r: int, lam: int, n: int) -> int:
    _check_nat(r=r, lam=lam, n=n)
    return tilde_t_egf(n, r, lam).count(n)


# ---------------------------------------------------------------------------
# queries


class Family(enum.Enum):
    BesselCoeff = "bessel-coeff"
    Bessel2 = "bessel2"
    Telephone = "telephone"
    Hermite = "hermite"
    RBesselNK = "r-bessel-nk"
    RBesselTotal = "r-bessel-total"
    TrNK = "tr-nk"
    TrTotal = "tr-total"
    RStirling = "r-stirling"
    Whitney = "whitney"
    Dowling = "dowling"
    RBell = "r-bell"
    GenB1 = "gen-b1"
    GenBLambda = "gen-b-lambda"
    TildeB = "tilde-b"
    TrLambda = "tr-lambda"
    TildeT = "tilde-t"

    @classmethod
    def parse(cls, text: str) -> "Family":
        for fam in cls:
            if text in (fam.value, fam.name):
                return fam
        raise ValueError(f"unknown family {text!r}")


# parameters each family reads besides n
FAMILY_PARAMS: dict[Family, tuple[str, ...]] = {
    Family.BesselCoeff: ("k",),
    Family.Bessel2: ("k",),
    Family.Telephone: (),
    Family.Hermite: (),
    Family.RBesselNK: ("k", "r"),
    Family.RBesselTotal: ("r",),
    Family.TrNK: ("k", "r"),
    Family.TrTotal: ("r",),
    Family.RStirling: ("k", "r"),
    Family.Whitney: ("m", "r", "k"),
    Family.Dowling: ("m", "r", "x"),
    Family.RBell: ("lam", "r"),
    Family.GenB1: ("r",),
    Family.GenBLambda: ("r", "lam"),
    Family.TildeB: ("r", "lam"),
    Family.TrLambda: ("r", "lam"),
    Family.TildeT: ("r", "lam"),
}

_OPTIONAL_PARAMS = ("k", "r", "m", "lam", "x")


@dataclass(frozen=True)
class FamilyQuery:
    family: Family
    n: int
    k: int | None = None
    r: int | None = None
    m: int | None = None
    lam: int | None = None
    x: int | None = None

    def __post_init__(self) -> None:
        wanted = FAMILY_PARAMS[self.family]
        for name in _OPTIONAL_PARAMS:
            value = getattr(self, name)
            if name in wanted and value is None:
                raise ValueError(f"{self.family.value} needs parameter {name}")
            if name not in wanted and value is not None:
                raise ValueError(f"{self.family.value} does not take parameter {name}")
        _check_nat(n=self.n)
        for name in ("k", "r", "lam"):
            v = getattr(self, name)
            if v is not None:
                _check_nat(**{name: v})
        if self.m is not None and (not isinstance(self.m, int) or self.m < 1):
            raise ValueError(f"m must be at least 1, got {self.m!r}")
        if self.family is Family.RBell and not isinstance(self.lam, int):
            raise ValueError("lam must be an integer")

    @classmethod
    def build(cls, family: Family, n: int, **params: int | None) -> "FamilyQuery":
        """Like the constructor but silently drops parameters the family ignores."""
        wanted = FAMILY_PARAMS[family]
        kept = {k: v for k, v in params.items() if k in wanted}
        return cls(family, n, **kept)

    def with_n(self, n: int) -> "FamilyQuery":
        return FamilyQuery(self.family, n, self.k, self.r, self.m, self.lam, self.x)

    def params(self) -> dict[str, int]:
        out = {"n": self.n}
        for name in _OPTIONAL_PARAMS:
            v = getattr(self, name)
            if v is not None:
                out[name] = v
        return out


def evaluate(q: FamilyQuery):
    """Canonical value of a query (a coefficient tuple for Hermite)."""
    f = q.family
    if f is Family.BesselCoeff:
        return bessel_coeff(q.n, q.k)
    if f is Family.Bessel2:
        return bessel2(q.n, q.k)
    if f is Family.Telephone:
        return telephone(q.n)
    if f is Family.Hermite:
        return hermite_coeffs(q.n)
    if f is Family.RBesselNK:
        return r_bessel_nk(q.n, q.k, q.r)
    if f is Family.RBesselTotal:
        return r_bessel_total(q.n, q.r)
    if f is Family.TrNK:
        return t_r_nk(q.n, q.k, q.r)
    if f is Family.TrTotal:
        return t_r_total(q.n, q.r)
    if f is Family.RStirling:
        return r_stirling(q.n, q.k, q.r)
    if f is Family.Whitney:
        return whitney(q.m, q.r, q.n, q.k)
    if f is Family.Dowling:
        return dowling(q.m, q.r, q.x, q.n)
    if f is Family.RBell:
        return r_bell(q.lam, q.r, q.n)
    if f is Family.GenB1:
        return gen_b1(q.r, q.n)
    if f is Family.GenBLambda:
        return gen_b_lambda(q.r, q.lam, q.n)
    if f is Family.TildeB:
        return tilde_b(q.r, q.lam, q.n)
    if f is Family.TrLambda:
        return t_r_lambda(q.r, q.lam, q.n)
    if f is Family.TildeT:
        return tilde_t(q.r, q.lam, q.n)
    raise AssertionError(f)


_EGF_BUILDERS: dict[Family, Callable[..., Egf]] = {
    Family.Bessel2: lambda o, q: _bessel_kernel(o).pow(q.k).scale(Fraction(1, factorial(q.k))),
    Family.Telephone: lambda o, q: _bessel_kernel(o).exp(),
    Family.RBesselNK: lambda o, q: r_bessel_egf(o, q.k, q.r),
    Family.RBesselTotal: lambda o, q: r_bessel_total_egf(o, q.r),
    Family.TrNK: lambda o, q: t_r_egf(o, q.k, q.r),
    Family.TrTotal: lambda o, q: t_r_total_egf(o, q.r),
    Family.RStirling: lambda o, q: r_stirling_egf(o, q.k, q.r),
    Family.Whitney: lambda o, q: (
        exp_linear(q.r, o) * exp_linear_minus_one(q.m, o).scale(Fraction(1, q.m)).pow(q.k)
    ).scale(Fraction(1, factorial(q.k))),
    Family.Dowling: lambda o, q: dowling_egf(o, q.m, q.r, q.x),
    Family.RBell: lambda o, q: r_bell_egf(o, q.lam, q.r),
    Family.GenB1: lambda o, q: gen_b1_egf(o, q.r),
    Family.GenBLambda: lambda o, q: gen_b_lambda_egf(o, q.r, q.lam),
    Family.TildeB: lambda o, q: tilde_b_egf(o, q.r, q.lam),
    Family.TrLambda: lambda o, q: t_r_lambda_egf(o, q.r, q.lam),
    Family.TildeT: lambda o, q: tilde_t_egf(o, q.r, q.lam),
}


def family_egf(q: FamilyQuery, order: int) -> Egf:
    """The exponential generating function of q's family (q.n is ignored)."""
    try:
        builder = _EGF_BUILDERS[q.family]
    except KeyError:
        raise ValueError(f"{q.family.value} has no generating-function route") from None
    return builder(order, q)


@dataclass(frozen=True)
class SequenceTable:
    query: FamilyQuery
    rows: tuple[tuple[int, int], ...] = field(default=())

    @property
    def values(self) -> list[int]:
        return [v for _, v in self.rows]


def sequence(q: FamilyQuery, n_max: int, n_min: int = 0) -> SequenceTable:
    if q.family is Family.Hermite:
        raise ValueError("hermite yields polynomials, not a sequence of integers")
    rows = tuple((n, evaluate(q.with_n(n))) for n in range(n_min, n_max + 1))
    return SequenceTable(q, rows)
