import random

import pytest

from telex.families import Family, FamilyQuery, evaluate
from telex.oracle import (
    ORACLE_LIMIT,
    Pairing,
    PartitionScene,
    SceneTooLarge,
    count_scene,
    iter_configurations,
    list_scene,
    partitions,
    scene_for,
)


def test_telephone_listing():
    listing = list_scene(scene_for(FamilyQuery(Family.Telephone, 3))).listing
    assert listing == ("{1,2} {3}", "{1,3} {2}", "{1} {2,3}", "{1} {2} {3}")


def test_r_bessel_listing_size():
    result = list_scene(scene_for(FamilyQuery(Family.RBesselTotal, 2, r=2)))
    assert result.total == len(result.listing) == 8
    assert len(set(result.listing)) == 8


def test_gen_b1_listing():
    listing = list_scene(scene_for(FamilyQuery(Family.GenB1, 1, r=1))).listing
    assert sorted(listing) == sorted(["{1_r,1}", "{1_r} {1}", "{1_r}~{1}"])


def test_partitions_bell_numbers():
    assert [sum(1 for _ in partitions(PartitionScene(n))) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]


SCENES = [
    FamilyQuery(Family.Telephone, 4),
    FamilyQuery(Family.Whitney, 3, k=2, r=1, m=2),
    FamilyQuery(Family.Dowling, 3, r=1, m=2, x=2),
    FamilyQuery(Family.GenB1, 3, r=1),
    FamilyQuery(Family.GenBLambda, 3, r=1, lam=2),
    FamilyQuery(Family.TildeB, 3, r=1, lam=2),
    FamilyQuery(Family.TrLambda, 3, r=1, lam=2),
    FamilyQuery(Family.TildeT, 3, r=2, lam=1),
]


@pytest.mark.parametrize("q", SCENES, ids=lambda q: q.family.value)
def test_relabel_invariance(q):
    scene = scene_for(q)
    rng = random.Random(q.n * 31 + (q.r or 0))
    perm = list(range(1, q.n + 1))
    rng.shuffle(perm)
    relabel = dict(zip(range(1, q.n + 1), perm)).__getitem__
    plain = sorted(iter_configurations(scene))
    moved = sorted(iter_configurations(scene, relabel=relabel))
    assert plain == moved
    assert len(set(plain)) == len(plain) == evaluate(q)


def test_limits():
    with pytest.raises(SceneTooLarge):
        count_scene(PartitionScene(ORACLE_LIMIT + 1))
    with pytest.raises(SceneTooLarge):
        list_scene(PartitionScene(6), limit=10)


def test_scene_validation():
    with pytest.raises(ValueError):
        PartitionScene(2, 1, pairing=Pairing.HUB_ATTACHMENT, dist_cap=2)
    with pytest.raises(ValueError):
        scene_for(FamilyQuery(Family.Hermite, 2))


def test_zero_sections_forbid_free_blocks():
    assert count_scene(PartitionScene(2, 1, sections=0)) == 1  # all free elements join the hub
    assert count_scene(PartitionScene(0, 0, sections=0)) == 1
