import itertools

import pytest

from telex import families as fam
from telex.families import Family, FamilyQuery, evaluate, family_egf, sequence


def set_partitions(items):
    """Plain recursive enumerator, kept independent of the oracle."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def r_partitions(n, r):
    """Partitions of r distinguished plus n free elements, distinguished ones apart.
    Yields (distinguished blocks, free blocks) with free elements only."""
    dist = [("d", j) for j in range(r)]
    for part in set_partitions(dist + list(range(1, n + 1))):
        heads = [b for b in part if any(isinstance(e, tuple) for e in b)]
        if any(sum(isinstance(e, tuple) for e in b) > 1 for b in heads):
            continue
        free = [b for b in part if b not in heads]
        yield heads, free


def involutions(n):
    return sum(
        1
        for p in itertools.permutations(range(n))
        if all(p[p[i]] == i for i in range(n))
    )


def test_telephone_counts_involutions():
    assert [fam.telephone(n) for n in range(8)] == [involutions(n) for n in range(8)]


@pytest.mark.parametrize("n", range(8))
def test_bessel2_and_stirling_brute(n):
    parts = list(set_partitions(range(n)))
    for k in range(n + 1):
        assert fam.stirling2(n, k) == sum(1 for p in parts if len(p) == k)
        assert fam.bessel2(n, k) == sum(1 for p in parts if len(p) == k and all(len(b) <= 2 for b in p))


@pytest.mark.parametrize("n,r", [(n, r) for n in range(6) for r in range(3)])
def test_r_families_brute(n, r):
    parts = list(r_partitions(n, r))
    for k in range(n + 1):
        with_k = [(d, f) for d, f in parts if len(f) == k]
        assert fam.r_stirling(n, k, r) == len(with_k)
        small = [(d, f) for d, f in with_k if all(len(b) <= 2 for b in d + f)]
        assert fam.r_bessel_nk(n, k, r) == len(small)
        for m in (1, 2, 3):
            weight = sum(m ** (sum(len(b) for b in f) - k) for _, f in with_k)
            assert fam.whitney(m, r, n, k) == weight
    for m, x in ((1, 2), (2, 1), (3, 2)):
        brute = sum(m ** (sum(len(b) for b in f) - len(f)) * x ** len(f) for _, f in parts)
        assert fam.dowling(m, r, x, n) == brute


@pytest.mark.parametrize(
    "call,expected",
    [
        (lambda: fam.gen_b1(0, 2), 3),
        (lambda: fam.gen_b1(1, 1), 3),
        (lambda: fam.gen_b1(1, 2), 11),
        (lambda: fam.gen_b_lambda(0, 2, 2), 6),
        (lambda: fam.gen_b_lambda(2, 1, 3), 22),
        (lambda: fam.tilde_b(0, 1, 3), 11),
        (lambda: fam.tilde_b(1, 1, 1), 2),
        (lambda: fam.t_r_lambda(1, 1, 2), 5),
        (lambda: fam.t_r_lambda(0, 3, 2), 12),
        (lambda: fam.tilde_t(1, 1, 2), 7),
        (lambda: fam.tilde_t(1, 0, 3), 5),
        (lambda: fam.r_bell(1, 0, 3), 5),
        (lambda: fam.r_bell(1, 1, 2), 5),
        (lambda: fam.whitney(2, 3, 2, 0), 9),
        (lambda: fam.whitney(1, 0, 3, 2), 3),
        (lambda: fam.whitney(2, 1, 2, 1), 4),
        (lambda: fam.dowling(2, 0, 1, 3), 11),
        (lambda: fam.dowling(1, 0, 1, 4), 15),
        (lambda: fam.r_stirling(3, 2, 0), 3),
        (lambda: fam.t_r_total(2, 1), 5),
        (lambda: fam.t_r_nk(1, 0, 2), 2),
        (lambda: fam.bessel2(4, 2), 3),
        (lambda: fam.bessel2(4, 3), 6),
        (lambda: fam.bessel_coeff(2, 0), 3),
        (lambda: fam.bessel_coeff(3, 2), 6),
    ],
)
def test_worked_values(call, expected):
    assert call() == expected


def test_r_bessel_total_table():
    assert [fam.r_bessel_total(n, 2) for n in range(9)] == [1, 3, 8, 22, 66, 206, 688, 2388, 8732]


def test_hermite():
    assert fam.hermite_coeffs(0) == (1,)
    assert fam.hermite_coeffs(2) == (-1, 0, 1)
    assert fam.hermite_coeffs(3) == (0, -3, 0, 1)


def test_telephone_routes_agree():
    for n in range(30):
        t = fam.telephone(n)
        assert t == fam.telephone_recurrence(n) == fam.telephone_via_hermite(n)


def test_negative_lambda_r_bell():
    # exp(-(e^z - 1)): the complementary Bell numbers
    assert [fam.r_bell(-1, 0, n) for n in range(7)] == [1, -1, 0, 1, 1, -2, -9]
    with pytest.raises(ValueError):
        fam.r_bell(1, -1, 2)


def _queries(n):
    for k in range(n + 1):
        yield FamilyQuery(Family.Bessel2, n, k=k)
        for r in range(3):
            yield FamilyQuery(Family.RBesselNK, n, k=k, r=r)
            yield FamilyQuery(Family.TrNK, n, k=k, r=r)
            yield FamilyQuery(Family.RStirling, n, k=k, r=r)
            yield FamilyQuery(Family.Whitney, n, k=k, r=r, m=2)
    yield FamilyQuery(Family.Telephone, n)
    for r in range(3):
        yield FamilyQuery(Family.RBesselTotal, n, r=r)
        yield FamilyQuery(Family.TrTotal, n, r=r)
        yield FamilyQuery(Family.GenB1, n, r=r)
        yield FamilyQuery(Family.Dowling, n, r=r, m=2, x=3)
        for lam in range(3):
            for f in (Family.RBell, Family.GenBLambda, Family.TildeB, Family.TrLambda, Family.TildeT):
                yield FamilyQuery(f, n, r=r, lam=lam)


@pytest.mark.parametrize("n", range(8))
def test_series_route_matches_canonical(n):
    for q in _queries(n):
        assert family_egf(q, n).count(n) == evaluate(q), q


def test_query_validation():
    with pytest.raises(ValueError):
        FamilyQuery(Family.Whitney, 3, k=1, r=0)  # missing m
    with pytest.raises(ValueError):
        FamilyQuery(Family.Telephone, 3, r=1)
    with pytest.raises(ValueError):
        FamilyQuery(Family.Dowling, 3, r=0, m=0, x=1)
    with pytest.raises(ValueError):
        FamilyQuery(Family.Telephone, -1)
    assert FamilyQuery.build(Family.Telephone, 2, r=5, lam=None).params() == {"n": 2}
    assert Family.parse("tilde-t") is Family.TildeT
    with pytest.raises(ValueError):
        Family.parse("nope")


def test_sequence():
    table = sequence(FamilyQuery(Family.Telephone, 0), 5, 2)
    assert table.rows == ((2, 2), (3, 4), (4, 10), (5, 26))
    with pytest.raises(ValueError):
        sequence(FamilyQuery(Family.Hermite, 0), 3)
    with pytest.raises(ValueError):
        fam.bessel_coeff(2, 3)
    with pytest.raises(ValueError):
        family_egf(FamilyQuery(Family.Hermite, 0), 3)
