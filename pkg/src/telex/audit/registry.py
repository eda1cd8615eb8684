"""The fixed registry of identities the auditor evaluates.

Each entry has a stable id (``thm-3.1``, ``eq-34`` ...).  Entries with
``variant_of`` set are candidate corrections of another entry and never
count towards coverage.

When an identity restates the canonical route of the family on its left,
the left side is taken from an independent route instead (the family's
generating function or the brute-force oracle), otherwise the check would be
circular.  The ``lhs_route`` field records which route was used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

from .. import families as fam
from ..arith import GaussInt, binomial, falling_factorial
from ..egf import Egf, constant, exp_linear, exp_linear_minus_one
from ..families import Family, FamilyQuery
from ..oracle import ORACLE_LIMIT, count_scene, scene_for
from .dobinski import dobinski_eval

__all__ = ["DEFAULT_TERMS", "PARAM_ORDER", "IdentityDef", "lookup", "registry"]

# canonical ordering of grid parameters; points are tuples in this order
PARAM_ORDER = ("n", "k", "r", "m", "lam", "x")

Value = Union[int, Fraction, GaussInt]

DEFAULT_TERMS = 40


@dataclass(frozen=True)
class IdentityDef:
    id: str
    statement: str
    params: tuple[str, ...]
    lhs: Callable[..., Value]
    rhs: Callable[..., object]
    domain: Callable[..., bool]
    domain_text: str
    variant_of: str | None = None
    kind: str = "exact"  # or "enclosure"
    lhs_route: str = "canonical"
    # query whose oracle count must equal lhs (identities with combinatorial sides)
    oracle_lhs: Callable[..., FamilyQuery] | None = None

    def in_domain(self, **p: int) -> bool:
        return self.domain(**p)


# ---------------------------------------------------------------------------
# helpers that make the printed formulas total on their index ranges


def _bl(r: int, lam: int, n: int) -> int:
    if r < 0 or n < 0:
        return 0
    return fam.gen_b_lambda(r, lam, n)


def _b1(r: int, n: int) -> int:
    if n < 0:
        return 0
    return fam.gen_b1(r, n)


def _tt(r: int, lam: int, n: int) -> int:
    if n < 0:
        return 0
    return fam.tilde_t(r, lam, n)


def _tl(r: int, lam: int, n: int) -> int:
    if n < 0:
        return 0
    return fam.t_r_lambda(r, lam, n)


def _oracle_or(query: FamilyQuery, fallback: Callable[[], int]) -> int:
    scene = scene_for(query)
    if scene.size <= ORACLE_LIMIT:
        return count_scene(scene)
    return fallback()


@lru_cache(maxsize=None)
def _eq23_sides(r: int, lam: int, order: int) -> tuple[Egf, Egf]:
    e1 = exp_linear_minus_one(1, order)
    e2 = exp_linear_minus_one(2, order)
    front = exp_linear(r, order)
    left = front * (e1.scale(r * lam) + e2.scale(Fraction(lam, 2))).exp()
    base = e1 * (exp_linear(1, order) + constant(1, order))  # (e^z - 1)(e^z + 1)
    acc = Egf([0] * (order + 1))
    power = Egf([1] + [0] * order)
    for l in range(order + 1):
        acc = acc + power.scale(Fraction(lam**l, 2**l * fam.factorial(l)))
        power = power * base
    right = front * e1.scale(lam * r).exp() * acc
    return left, right


def _nested_chain(r: int, n: int, k: int) -> dict[int, int]:
    """Weights of i_r over the chain sum_{i_1=k}^{n} C(n,i_1) ... C(i_{r-1}, i_r);
    with r = 0 the chain is empty and i_r is the outer index n."""
    weights = {n: 1}
    for _ in range(r):
        nxt: dict[int, int] = {}
        for i, w in weights.items():
            for j in range(k, i + 1):
                nxt[j] = nxt.get(j, 0) + w * binomial(i, j)
        weights = nxt
    return weights


def _hermite_value(n: int) -> GaussInt:
    x = GaussInt(0, -1)
    value = GaussInt(0, 0)
    for c in reversed(fam.hermite_coeffs(n)):
        value = value * x + c
    return GaussInt(0, 1) ** n * value


def _all(**_: int) -> bool:
    return True


# ---------------------------------------------------------------------------


def _build() -> tuple[IdentityDef, ...]:
    S = fam.stirling2
    C = binomial
    W = fam.whitney
    out: list[IdentityDef] = []

    def add(**kw) -> None:
        out.append(IdentityDef(**kw))

    # generalized r-Bessel numbers B_r(1,n)
    add(
        id="thm-3.1",
        statement="B_r(1,n) = sum_{k=0}^{n} C(n,k) r^(n-k) B_0(1,k)",
        params=("r", "n"),
        lhs=lambda r, n: fam.gen_b1(r, n),
        rhs=lambda r, n: sum(C(n, k) * r ** (n - k) * fam.gen_b1(0, k) for k in range(n + 1)),
        domain=_all,
        domain_text="n, r >= 0",
        oracle_lhs=lambda r, n: FamilyQuery(Family.GenB1, n, r=r),
    )
    add(
        id="thm-3.1-variant",
        statement="B_r(1,n) = sum_{k=0}^{n} C(n,k) (2r)^(n-k) B_0(1,k)",
        params=("r", "n"),
        lhs=lambda r, n: fam.gen_b1(r, n),
        rhs=lambda r, n: sum(C(n, k) * (2 * r) ** (n - k) * fam.gen_b1(0, k) for k in range(n + 1)),
        domain=_all,
        domain_text="n, r >= 0",
        variant_of="thm-3.1",
        oracle_lhs=lambda r, n: FamilyQuery(Family.GenB1, n, r=r),
    )
    add(
        id="thm-3.2",
        statement="B_r(1,n+1) = 2r B_r(1,n) + sum_{k=0}^{n} C(n,k) 2^k B_r(1,n-k)",
        params=("r", "n"),
        lhs=lambda r, n: fam.gen_b1_egf(n + 1, r).count(n + 1),
        rhs=lambda r, n: 2 * r * _b1(r, n) + sum(C(n, k) * 2**k * _b1(r, n - k) for k in range(n + 1)),
        domain=lambda r, n: r >= 1,
        domain_text="n >= 0, r >= 1",
        lhs_route="series exp(2rz + (e^{2z}-1)/2)",
        oracle_lhs=lambda r, n: FamilyQuery(Family.GenB1, n + 1, r=r),
    )
    add(
        id="thm-3.3",
        statement="B_r(1,n+1) = 2r B_r(1,n) + B_{r+1}(1,n)",
        params=("r", "n"),
        lhs=lambda r, n: fam.gen_b1(r, n + 1),
        rhs=lambda r, n: 2 * r * fam.gen_b1(r, n) + fam.gen_b1(r + 1, n),
        domain=lambda r, n: r >= 1,
        domain_text="n >= 0, r >= 1",
        oracle_lhs=lambda r, n: FamilyQuery(Family.GenB1, n + 1, r=r),
    )

    # B_r^lam(1;n)
    add(
        id="thm-4.1",
        statement="B_r^lam(1;n) = sum_{i=0}^{r} C(r,i) (n)_i B_0^lam(1;n-i)",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.gen_b_lambda_egf(n, r, lam).count(n),
        rhs=lambda r, lam, n: sum(
            C(r, i) * falling_factorial(n, i) * _bl(0, lam, n - i) for i in range(r + 1)
        ),
        domain=_all,
        domain_text="n, r, lam >= 0",
        lhs_route="series (1+z)^r exp(lam (z + z^2/2))",
        oracle_lhs=lambda r, lam, n: FamilyQuery(Family.GenBLambda, n, r=r, lam=lam),
    )
    add(
        id="thm-4.2",
        statement="B_r^lam(1;n+1) = r B_r^lam(1;n) + lam B_r^lam(1;n) + n lam B_r^lam(1;n-1)",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.gen_b_lambda(r, lam, n + 1),
        rhs=lambda r, lam, n: (r + lam) * _bl(r, lam, n) + n * lam * _bl(r, lam, n - 1),
        domain=lambda r, lam, n: n >= 1 and lam >= 1,
        domain_text="r >= 0, n, lam >= 1",
        oracle_lhs=lambda r, lam, n: FamilyQuery(Family.GenBLambda, n + 1, r=r, lam=lam),
    )
    add(
        id="thm-4.3",
        statement="B_r^lam(1;n+1) = r B_{r-1}^lam(1;n) + lam B_{r+1}^lam(1;n)",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.gen_b_lambda(r, lam, n + 1),
        rhs=lambda r, lam, n: r * _bl(r - 1, lam, n) + lam * _bl(r + 1, lam, n),
        domain=lambda r, lam, n: n >= 1 and lam >= 1,
        domain_text="r >= 0, n, lam >= 1",
        oracle_lhs=lambda r, lam, n: FamilyQuery(Family.GenBLambda, n + 1, r=r, lam=lam),
    )
    add(
        id="thm-4.4",
        statement=(
            "B_r^lam(1;n+1) = r B_{r-1}^lam(1;n) + lam sum_{i=0}^{r+1} C(r+1,i) (n)_i B_r^lam(1;n-i)"
        ),
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.gen_b_lambda(r, lam, n + 1),
        rhs=lambda r, lam, n: r * _bl(r - 1, lam, n)
        + lam * sum(C(r + 1, i) * falling_factorial(n, i) * _bl(r, lam, n - i) for i in range(r + 2)),
        domain=lambda r, lam, n: n >= 1 and lam >= 1,
        domain_text="r >= 0, n, lam >= 1",
        oracle_lhs=lambda r, lam, n: FamilyQuery(Family.GenBLambda, n + 1, r=r, lam=lam),
    )
    add(
        id="thm-4.4-variant",
        statement=(
            "B_r^lam(1;n+1) = r B_{r-1}^lam(1;n) + lam sum_{i=0}^{r+1} C(r+1,i) (n)_i B_0^lam(1;n-i)"
        ),
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.gen_b_lambda(r, lam, n + 1),
        rhs=lambda r, lam, n: r * _bl(r - 1, lam, n)
        + lam * sum(C(r + 1, i) * falling_factorial(n, i) * _bl(0, lam, n - i) for i in range(r + 2)),
        domain=lambda r, lam, n: n >= 1 and lam >= 1,
        domain_text="r >= 0, n, lam >= 1",
        variant_of="thm-4.4",
    )
    add(
        id="thm-dowling-rec",
        statement=(
            "D_{2,r}^lam(n+1) = r sum_{k=0}^{n} S(n,k) B_r^lam(1;k)"
            " + 2 lam sum_{k=0}^{n} S(n,k) B_{r+1}^lam(1;k)"
        ),
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.dowling(2, r, lam, n + 1),
        rhs=lambda r, lam, n: r * sum(S(n, k) * _bl(r, lam, k) for k in range(n + 1))
        + 2 * lam * sum(S(n, k) * _bl(r + 1, lam, k) for k in range(n + 1)),
        domain=lambda r, lam, n: lam >= 1,
        domain_text="n, r >= 0, lam >= 1",
        oracle_lhs=lambda r, lam, n: FamilyQuery(Family.Dowling, n + 1, r=r, m=2, x=lam),
    )
    add(
        id="thm-dowling-rec-variant",
        statement=(
            "D_{2,r}^lam(n+1) = r sum_{k=0}^{n} S(n,k) B_r^lam(1;k)"
            " + lam sum_{k=0}^{n} S(n,k) B_{r+2}^lam(1;k)"
        ),
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.dowling(2, r, lam, n + 1),
        rhs=lambda r, lam, n: r * sum(S(n, k) * _bl(r, lam, k) for k in range(n + 1))
        + lam * sum(S(n, k) * _bl(r + 2, lam, k) for k in range(n + 1)),
        domain=lambda r, lam, n: lam >= 1,
        domain_text="n, r >= 0, lam >= 1",
        variant_of="thm-dowling-rec",
    )

    # tilde B_r^lam(1;n)
    add(
        id="eq-34",
        statement="tildeB_r^lam(1;n) = sum_{k=0}^{n} W_{2,r}(n,k) lam^k",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: _oracle_or(
            FamilyQuery(Family.TildeB, n, r=r, lam=lam),
            lambda: fam.tilde_b_egf(n, r, lam).count(n),
        ),
        rhs=lambda r, lam, n: sum(W(2, r, n, k) * lam**k for k in range(n + 1)),
        domain=lambda r, lam, n: lam >= 1,
        domain_text="n, r >= 0, lam >= 1",
        lhs_route="oracle enumeration (series beyond the oracle limit)",
    )
    add(
        id="thm-4.6",
        statement="tildeB_r^lam(1;n) = sum_{k=0}^{n} sum_{i=k}^{n} C(n,i) W_{2,r-1}(i,k) lam^k",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.tilde_b(r, lam, n),
        rhs=lambda r, lam, n: sum(
            C(n, i) * W(2, r - 1, i, k) * lam**k for k in range(n + 1) for i in range(k, n + 1)
        ),
        domain=lambda r, lam, n: r >= 1 and lam >= 1,
        domain_text="n >= 0, r, lam >= 1",
        oracle_lhs=lambda r, lam, n: FamilyQuery(Family.TildeB, n, r=r, lam=lam),
    )
    add(
        id="thm-4.7",
        statement=(
            "tildeB_r^lam(1;n) = sum_{k=0}^{n} [sum_{i_1=k}^{n} C(n,i_1) sum_{i_2=k}^{i_1} C(i_1,i_2)"
            " ... sum_{i_r=k}^{i_{r-1}} C(i_{r-1},i_r)] W_{2,0}(i_r,k) lam^k"
        ),
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.tilde_b(r, lam, n),
        rhs=lambda r, lam, n: sum(
            w * W(2, 0, i, k) * lam**k
            for k in range(n + 1)
            for i, w in _nested_chain(r, n, k).items()
        ),
        domain=lambda r, lam, n: lam >= 1,
        domain_text="n, r >= 0, lam >= 1 (r = 0: empty chain, i_r = n)",
        oracle_lhs=lambda r, lam, n: FamilyQuery(Family.TildeB, n, r=r, lam=lam),
    )

    # T_r^lam(n) and tilde T_r^lam(n)
    add(
        id="thm-5.2",
        statement="T_r^lam(n+1) = (r+lam) T_r^lam(n) + n lam T_r^lam(n-1)",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.t_r_lambda_egf(n + 1, r, lam).count(n + 1),
        rhs=lambda r, lam, n: (r + lam) * _tl(r, lam, n) + n * lam * _tl(r, lam, n - 1),
        domain=lambda r, lam, n: lam >= 1,
        domain_text="n, r >= 0, lam >= 1",
        lhs_route="series exp((r+lam) z + lam z^2/2)",
        oracle_lhs=lambda r, lam, n: FamilyQuery(Family.TrLambda, n + 1, r=r, lam=lam),
    )
    add(
        id="eq-300",
        statement="T_r^lam(n) = sum_{k=0}^{n} C(n,k) tildeB_0^lam(1;k) r^(n-k)",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.t_r_lambda(r, lam, n),
        rhs=lambda r, lam, n: sum(C(n, k) * fam.tilde_b(0, lam, k) * r ** (n - k) for k in range(n + 1)),
        domain=lambda r, lam, n: lam >= 1,
        domain_text="n, r >= 0, lam >= 1",
        oracle_lhs=lambda r, lam, n: FamilyQuery(Family.TrLambda, n, r=r, lam=lam),
    )
    add(
        id="eq-300-variant",
        statement="T_r^lam(n) = sum_{k=0}^{n} C(n,k) B_0^lam(1;k) r^(n-k)",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.t_r_lambda(r, lam, n),
        rhs=lambda r, lam, n: sum(C(n, k) * fam.gen_b_lambda(0, lam, k) * r ** (n - k) for k in range(n + 1)),
        domain=lambda r, lam, n: lam >= 1,
        domain_text="n, r >= 0, lam >= 1",
        variant_of="eq-300",
    )
    add(
        id="eq-33",
        statement="tildeT_r^lam(n) = sum_{k=0}^{n} C(n,k) Bell_0^r(k) D_{2,0}^lam(n-k)",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.tilde_t(r, lam, n),
        rhs=lambda r, lam, n: sum(
            C(n, k) * fam.r_bell(r, 0, k) * fam.dowling(2, 0, lam, n - k) for k in range(n + 1)
        ),
        domain=lambda r, lam, n: lam >= 1,
        domain_text="n, r >= 0, lam >= 1",
        oracle_lhs=lambda r, lam, n: FamilyQuery(Family.TildeT, n, r=r, lam=lam),
    )
    add(
        id="thm-5.5",
        statement="tildeT_r^lam(n+1) = r tildeT_r^lam(n) + lam sum_{k=0}^{n} C(n,k) 2^k tildeT_r^lam(n-k)",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.tilde_t(r, lam, n + 1),
        rhs=lambda r, lam, n: r * _tt(r, lam, n)
        + lam * sum(C(n, k) * 2**k * _tt(r, lam, n - k) for k in range(n + 1)),
        domain=lambda r, lam, n: lam >= 1,
        domain_text="n, r >= 0, lam >= 1",
        oracle_lhs=lambda r, lam, n: FamilyQuery(Family.TildeT, n + 1, r=r, lam=lam),
    )
    add(
        id="thm-5.5-variant",
        statement=(
            "tildeT_r^lam(n+1) = r sum_{k=0}^{n} C(n,k) tildeT_r^lam(n-k)"
            " + lam sum_{k=0}^{n} C(n,k) 2^k tildeT_r^lam(n-k)"
        ),
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.tilde_t(r, lam, n + 1),
        rhs=lambda r, lam, n: sum(C(n, k) * (r + lam * 2**k) * _tt(r, lam, n - k) for k in range(n + 1)),
        domain=lambda r, lam, n: lam >= 1,
        domain_text="n, r >= 0, lam >= 1",
        variant_of="thm-5.5",
    )
    add(
        id="thm-5.6",
        statement="D_{2,0}^lam(n) = sum_{k=0}^{n} C(n,k) (-1)^k Bell_0^r(k) tildeT_r^lam(n-k)",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.dowling(2, 0, lam, n),
        rhs=lambda r, lam, n: sum(
            C(n, k) * (-1) ** k * fam.r_bell(r, 0, k) * fam.tilde_t(r, lam, n - k) for k in range(n + 1)
        ),
        domain=lambda r, lam, n: lam >= 1,
        domain_text="n, r >= 0, lam >= 1",
        oracle_lhs=lambda r, lam, n: FamilyQuery(Family.Dowling, n, r=0, m=2, x=lam),
    )
    add(
        id="thm-5.6-variant",
        statement="D_{2,0}^lam(n) = sum_{k=0}^{n} C(n,k) Bell_0^{-r}(k) tildeT_r^lam(n-k)",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.dowling(2, 0, lam, n),
        rhs=lambda r, lam, n: sum(
            C(n, k) * fam.r_bell(-r, 0, k) * fam.tilde_t(r, lam, n - k) for k in range(n + 1)
        ),
        domain=lambda r, lam, n: lam >= 1,
        domain_text="n, r >= 0, lam >= 1",
        variant_of="thm-5.6",
    )

    # generating-function section
    add(
        id="eq-9",
        statement="sum_n tildeB_{r(1+lam)}^lam(1;n) z^n/n! = e^{(1+lam) r z} exp(lam (e^{2z}-1)/2)",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.tilde_b(r * (1 + lam), lam, n),
        rhs=lambda r, lam, n: (
            exp_linear((1 + lam) * r, n) * exp_linear_minus_one(2, n).scale(Fraction(lam, 2)).exp()
        ).count(n),
        domain=_all,
        domain_text="n, r, lam >= 0",
        oracle_lhs=lambda r, lam, n: FamilyQuery(Family.TildeB, n, r=r * (1 + lam), lam=lam),
    )
    add(
        id="thm-6.1",
        statement=(
            "tildeB_{r(1+lam)}^lam(1;n) = e^{-lam/2} sum_{m>=0} lam^m/(2^m m!)"
            " sum_{k=0}^{n} W_{2,r lam}(n,k) 2^(k+1)"
        ),
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.tilde_b(r * (1 + lam), lam, n),
        rhs=lambda r, lam, n, terms=DEFAULT_TERMS: dobinski_eval("printed", r, lam, n, terms),
        domain=_all,
        domain_text="n, r, lam >= 0",
        kind="enclosure",
    )
    add(
        id="thm-6.1-variant",
        statement="tildeB_{r(1+lam)}^lam(1;n) = e^{-lam/2} sum_{m>=0} (lam/2)^m/m! (2m + (1+lam) r)^n",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.tilde_b(r * (1 + lam), lam, n),
        rhs=lambda r, lam, n, terms=DEFAULT_TERMS: dobinski_eval("canonical", r, lam, n, terms),
        domain=_all,
        domain_text="n, r, lam >= 0",
        variant_of="thm-6.1",
        kind="enclosure",
    )
    add(
        id="thm-6.2",
        statement=(
            "tildeB_{r(1+lam)}^lam(1;n) = sum_{k=0}^{n} sum_{i=0}^{k} sum_{j=0}^{n} sum_{m=0}^{n-j}"
            " C(n-j,m) (-1)^(k-i) 2^(j-k) i^j r^(n-j) lam^(m+k)"
        ),
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: fam.tilde_b(r * (1 + lam), lam, n),
        rhs=lambda r, lam, n: sum(
            C(n - j, m) * (-1) ** (k - i) * Fraction(2) ** (j - k) * i**j * r ** (n - j) * lam ** (m + k)
            for k in range(n + 1)
            for i in range(k + 1)
            for j in range(n + 1)
            for m in range(n - j + 1)
        ),
        domain=_all,
        domain_text="n, r, lam >= 0",
    )
    add(
        id="eq-23",
        statement=(
            "[z^n] e^{rz} exp(r lam (e^z-1) + lam (e^{2z}-1)/2)"
            " = [z^n] e^{rz} exp(lam r (e^z-1)) sum_{l>=0} lam^l (e^z-1)^l (e^z+1)^l / (2^l l!)"
        ),
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: _eq23_sides(r, lam, n)[0].coefficient(n),
        rhs=lambda r, lam, n: _eq23_sides(r, lam, n)[1].coefficient(n),
        domain=_all,
        domain_text="n, r, lam >= 0 (coefficientwise, series truncated at order n)",
        lhs_route="series coefficient (rational)",
    )
    add(
        id="thm-6.3",
        statement=(
            "sum_{i=0}^{n} tildeT_r^lam(i) r^(n-i) = sum_{t=0}^{n} sum_{l=0}^{n} sum_{m=0}^{l}"
            " lam^(t+l) r^t / 2^l C(l,m) C(l+t,t) {n+r+m, l+t+r+m}_{r+m}"
        ),
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: sum(fam.tilde_t(r, lam, i) * r ** (n - i) for i in range(n + 1)),
        rhs=lambda r, lam, n: _thm63_rhs(r, lam, n),
        domain=_all,
        domain_text="n, r, lam >= 0",
    )
    add(
        id="thm-6.3-variant",
        statement="sum_{i=0}^{n} C(n,i) tildeT_r^lam(i) r^(n-i) = (right side of thm-6.3)",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: sum(C(n, i) * fam.tilde_t(r, lam, i) * r ** (n - i) for i in range(n + 1)),
        rhs=lambda r, lam, n: _thm63_rhs(r, lam, n),
        domain=_all,
        domain_text="n, r, lam >= 0",
        variant_of="thm-6.3",
    )
    add(
        id="thm-6.3-variant-rl",
        statement="sum_{i=0}^{n} C(n,i) tildeT_{r lam}^lam(i) r^(n-i) = (right side of thm-6.3)",
        params=("r", "lam", "n"),
        lhs=lambda r, lam, n: sum(
            C(n, i) * fam.tilde_t(r * lam, lam, i) * r ** (n - i) for i in range(n + 1)
        ),
        rhs=lambda r, lam, n: _thm63_rhs(r, lam, n),
        domain=_all,
        domain_text="n, r, lam >= 0",
        variant_of="thm-6.3",
    )

    # Whitney / Bessel / telephone background identities
    add(
        id="eq-10",
        statement="(m x + r)^n = sum_{k=0}^{n} W_{m,r}(n,k) m^k (x)_k",
        params=("m", "r", "n", "x"),
        lhs=lambda m, r, n, x: (m * x + r) ** n,
        rhs=lambda m, r, n, x: sum(W(m, r, n, k) * m**k * falling_factorial(x, k) for k in range(n + 1)),
        domain=_all,
        domain_text="m >= 1; n, r, x >= 0",
    )
    add(
        id="whitney-rec",
        statement="W_{m,r}(n,k) = sum_{i=k}^{n} C(n,i) W_{m,r-1}(i,k)",
        params=("m", "r", "n", "k"),
        lhs=lambda m, r, n, k: W(m, r, n, k),
        rhs=lambda m, r, n, k: sum(C(n, i) * W(m, r - 1, i, k) for i in range(k, n + 1)),
        domain=lambda m, r, n, k: r >= 1 and k <= n,
        domain_text="m, r >= 1; 0 <= k <= n",
        oracle_lhs=lambda m, r, n, k: FamilyQuery(Family.Whitney, n, k=k, r=r, m=m),
    )
    add(
        id="whitney-bessel",
        statement="W_{2,r}(n,k) = sum_{i=0}^{n} S(n,i) B_r(i,k)",
        params=("r", "n", "k"),
        lhs=lambda r, n, k: W(2, r, n, k),
        rhs=lambda r, n, k: sum(S(n, i) * fam.r_bessel_nk(i, k, r) for i in range(n + 1)),
        domain=lambda r, n, k: k <= n,
        domain_text="r >= 0; 0 <= k <= n",
        oracle_lhs=lambda r, n, k: FamilyQuery(Family.Whitney, n, k=k, r=r, m=2),
    )
    add(
        id="eq-30",
        statement="T_n = i^n He_n(-i)",
        params=("n",),
        lhs=lambda n: GaussInt(fam.telephone(n), 0),
        rhs=lambda n: _hermite_value(n),
        domain=_all,
        domain_text="n >= 0",
        oracle_lhs=lambda n: FamilyQuery(Family.Telephone, n),
    )
    add(
        id="tsum",
        statement="T_n = sum_{k=0}^{n} B(n,k)",
        params=("n",),
        lhs=lambda n: fam.family_egf(FamilyQuery(Family.Telephone, n), n).count(n),
        rhs=lambda n: sum(fam.bessel2(n, k) for k in range(n + 1)),
        domain=_all,
        domain_text="n >= 0",
        lhs_route="series exp(z + z^2/2)",
        oracle_lhs=lambda n: FamilyQuery(Family.Telephone, n),
    )
    add(
        id="tsum-recurrence",
        statement="sum_{k=0}^{n} B(n,k) = T_n with T_{n+1} = T_n + n T_{n-1}",
        params=("n",),
        lhs=lambda n: fam.telephone(n),
        rhs=lambda n: fam.telephone_recurrence(n),
        domain=_all,
        domain_text="n >= 0",
        variant_of="tsum",
    )
    return tuple(out)


def _thm63_rhs(r: int, lam: int, n: int) -> Fraction:
    total = Fraction(0)
    for t in range(n + 1):
        for l in range(n + 1):
            for m in range(l + 1):
                st = fam.r_stirling(n, l + t, r + m)
                if st:
                    total += (
                        Fraction(lam ** (t + l) * r**t, 2**l) * binomial(l, m) * binomial(l + t, t) * st
                    )
    return total


@lru_cache(maxsize=None)
def registry() -> tuple[IdentityDef, ...]:
    return _build()


def lookup(identity_id: str) -> IdentityDef | None:
    for ident in registry():
        if ident.id == identity_id:
            return ident
    return None
