"""Brute-force enumeration of constrained set partitions.

A :class:`PartitionScene` describes one counting problem on ``r``
distinguished elements (written ``1_r .. r_r``) and ``n`` free elements
(written ``1 .. n``).  Distinguished elements always sit in distinct blocks.
On top of the partition a scene may ask for

* section labels on free blocks (``sections``; ``None`` means no section layer,
  ``0`` means there are no sections so free blocks cannot be placed at all),
* a matching of blocks (``pairing``),
* independent colours for non-minimal elements of free blocks
  (``element_colors``) and for whole free blocks (``block_colors``).

Listing format, one configuration per line, items separated by a space:

* a block is ``{e1,e2,...}`` with distinguished elements first; non-minimal
  elements of a free block carry ``^c`` when ``element_colors > 1``;
* ``#c`` after a free block is its block colour (only when ``block_colors > 1``);
* ``@s`` is a section label (1-based); a pair inside a section is written
  ``{a}~{b}@s`` and shares the label;
* ``X~Y`` is a matched pair of blocks;
* ``{...}->h_i`` is a free block attached to distinguished singleton ``i_r``.

Items appear with distinguished blocks first (in index order), then by
smallest free element.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, replace
from typing import Iterator, Sequence

from .families import Family, FamilyQuery

__all__ = [
    "LISTING_LIMIT",
    "ORACLE_LIMIT",
    "Pairing",
    "PartitionScene",
    "SceneCount",
    "SceneTooLarge",
    "count_scene",
    "gen_b_lambda_literal_scene",
    "list_scene",
    "partitions",
    "scene_for",
]

ORACLE_LIMIT = 12
LISTING_LIMIT = 10_000


class SceneTooLarge(ValueError):
    pass


class Pairing(enum.Enum):
    NONE = "none"
    # free blocks in the same section form a partial matching
    WITHIN_SECTIONS = "within_sections"
    # partial matching on all blocks; two distinguished blocks never match
    GLOBAL_MATCHING = "global_matching"
    # each free block joins a distinguished singleton (hub) or goes to a section,
    # where section blocks are matched as in WITHIN_SECTIONS
    HUB_ATTACHMENT = "hub_attachment"


@dataclass(frozen=True)
class PartitionScene:
    n: int
    r: int = 0
    dist_cap: int | None = None
    free_cap: int | None = None
    blocks: int | None = None
    sections: int | None = None
    pairing: Pairing = Pairing.NONE
    hub_cap: int | None = 1
    element_colors: int = 1
    block_colors: int = 1

    def __post_init__(self) -> None:
        if self.n < 0 or self.r < 0:
            raise ValueError("n and r must be non-negative")
        if self.dist_cap is not None and self.dist_cap < 1:
            raise ValueError("dist_cap must be at least 1")
        if self.free_cap is not None and self.free_cap < 1:
            raise ValueError("free_cap must be at least 1")
        if self.pairing is Pairing.HUB_ATTACHMENT and self.dist_cap != 1:
            raise ValueError("hub attachment needs distinguished singletons (dist_cap=1)")
        if self.sections is not None and self.sections < 0:
            raise ValueError("sections must be non-negative")
        if self.element_colors < 0 or self.block_colors < 0:
            raise ValueError("colour counts must be non-negative")

    @property
    def size(self) -> int:
        return self.n + self.r


@dataclass(frozen=True)
class SceneCount:
    scene: PartitionScene
    total: int
    listing: tuple[str, ...] | None = field(default=None)


# ---------------------------------------------------------------------------
# set partitions


def partitions(scene: PartitionScene) -> Iterator[tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]]:
    """Yield (distinguished parts, free blocks) by restricted growth strings.

    ``distinguished parts[j]`` lists the free elements sharing a block with
    ``(j+1)_r``; free blocks are ordered by their smallest element.
    """
    n, r = scene.n, scene.r
    dist_room = None if scene.dist_cap is None else scene.dist_cap - 1
    cap = scene.free_cap
    want = scene.blocks
    dist: list[list[int]] = [[] for _ in range(r)]
    free: list[list[int]] = []

    def rec(e: int) -> Iterator:
        if e > n:
            if want is None or len(free) == want:
                yield tuple(tuple(b) for b in dist), tuple(tuple(b) for b in free)
            return
        remaining = n - e + 1
        if want is not None and len(free) + remaining < want:
            return
        for part in dist:
            if dist_room is None or len(part) < dist_room:
                part.append(e)
                yield from rec(e + 1)
                part.pop()
        for block in free:
            if cap is None or len(block) < cap:
                block.append(e)
                yield from rec(e + 1)
                block.pop()
        if want is None or len(free) < want:
            free.append([e])
            yield from rec(e + 1)
            free.pop()

    yield from rec(1)


def _matchings(items: Sequence[int], allowed=None) -> Iterator[tuple[tuple[tuple[int, int], ...], tuple[int, ...]]]:
    """Partial matchings on ``items``: yields (pairs, unmatched)."""
    if not items:
        yield (), ()
        return
    first, rest = items[0], items[1:]
    for pairs, single in _matchings(rest, allowed):
        yield pairs, (first,) + single
    for i, other in enumerate(rest):
        if allowed is not None and not allowed(first, other):
            continue
        remaining = rest[:i] + rest[i + 1 :]
        for pairs, single in _matchings(remaining, allowed):
            yield ((first, other),) + pairs, single


def _hub_assignments(k: int, r: int, hub_cap: int | None) -> Iterator[tuple[int | None, ...]]:
    """For each free block, the hub index it joins or None (goes to a section)."""
    for choice in itertools.product([None, *range(r)], repeat=k):
        if hub_cap is not None:
            load = [0] * r
            ok = True
            for c in choice:
                if c is not None:
                    load[c] += 1
                    if load[c] > hub_cap:
                        ok = False
                        break
            if not ok:
                continue
        yield choice


# ---------------------------------------------------------------------------
# structures: a partition plus its matching / attachment, before labels


@dataclass(frozen=True)
class _Structure:
    dist: tuple[tuple[int, ...], ...]
    free: tuple[tuple[int, ...], ...]
    # matched pairs over block ids: ("d", j) or ("f", i)
    pairs: tuple[tuple[tuple[str, int], tuple[str, int]], ...]
    # hub index per free block (None = in a section / unattached)
    hubs: tuple[int | None, ...]
    # free blocks that take a section label individually
    labelled_singles: tuple[int, ...]
    # free-block pairs that share one section label
    labelled_pairs: tuple[tuple[int, int], ...]


def _structures(scene: PartitionScene) -> Iterator[_Structure]:
    for dist, free in partitions(scene):
        k = len(free)
        if scene.pairing is Pairing.NONE:
            yield _Structure(dist, free, (), (None,) * k, tuple(range(k)), ())
        elif scene.pairing is Pairing.GLOBAL_MATCHING:
            ids = [("d", j) for j in range(scene.r)] + [("f", i) for i in range(k)]
            idx = list(range(len(ids)))
            allowed = lambda a, b: not (ids[a][0] == "d" and ids[b][0] == "d")  # noqa: E731
            for pairs, _ in _matchings(idx, allowed):
                yield _Structure(
                    dist, free, tuple((ids[a], ids[b]) for a, b in pairs), (None,) * k, tuple(range(k)), ()
                )
        elif scene.pairing is Pairing.WITHIN_SECTIONS:
            for pairs, singles in _matchings(list(range(k))):
                yield _Structure(dist, free, tuple((("f", a), ("f", b)) for a, b in pairs), (None,) * k, singles, pairs)
        else:
            for hubs in _hub_assignments(k, scene.r, scene.hub_cap):
                loose = [i for i in range(k) if hubs[i] is None]
                for pairs, singles in _matchings(loose):
                    yield _Structure(
                        dist, free, tuple((("f", a), ("f", b)) for a, b in pairs), hubs, singles, pairs
                    )


def _multiplicity(scene: PartitionScene, s: _Structure) -> int:
    weight = 1
    if scene.sections is not None:
        weight *= scene.sections ** (len(s.labelled_singles) + len(s.labelled_pairs))
    if scene.element_colors != 1:
        weight *= scene.element_colors ** sum(len(b) - 1 for b in s.free)
    if scene.block_colors != 1:
        weight *= scene.block_colors ** len(s.free)
    return weight


def _check_size(scene: PartitionScene) -> None:
    if scene.size > ORACLE_LIMIT:
        raise SceneTooLarge(
            f"scene has {scene.size} elements; the oracle stops at {ORACLE_LIMIT}"
        )


def count_scene(scene: PartitionScene) -> int:
    """Exhaustive count: partitions and matchings are generated one by one;
    independent label choices (sections, colours) contribute their product."""
    _check_size(scene)
    return sum(_multiplicity(scene, s) for s in _structures(scene))


# ---------------------------------------------------------------------------
# listings


def _render_block(dist_index: int | None, elems: Sequence[int], colors: Sequence[int] | None, relabel) -> str:
    parts = []
    if dist_index is not None:
        parts.append(f"{dist_index + 1}_r")
    free = sorted(relabel(e) for e in elems)
    for pos, e in enumerate(free):
        if colors is not None and pos > 0:
            parts.append(f"{e}^{colors[pos - 1]}")
        else:
            parts.append(str(e))
    return "{" + ",".join(parts) + "}"


def _render(scene: PartitionScene, s: _Structure, section_of: dict, ecolors: dict, bcolors: dict, relabel=None) -> str:
    relabel = relabel or (lambda e: e)
    show_sections = scene.sections is not None
    in_pair_global = scene.pairing is Pairing.GLOBAL_MATCHING

    def block(bid: tuple[str, int], with_section: bool) -> str:
        kind, i = bid
        if kind == "d":
            return _render_block(i, s.dist[i], None, relabel)
        text = _render_block(None, s.free[i], ecolors.get(i), relabel)
        if i in bcolors:
            text += f"#{bcolors[i]}"
        if with_section and show_sections:
            text += f"@{section_of[('f', i)]}"
        return text

    def sort_key(bid):
        kind, i = bid
        if kind == "d":
            return (0, i)
        return (1, min(relabel(e) for e in s.free[i]))

    items: list[tuple[tuple, str]] = []
    paired: set = set()
    for a, b in s.pairs:
        a, b = sorted((a, b), key=sort_key)
        paired.update((a, b))
        if in_pair_global:
            text = f"{block(a, True)}~{block(b, True)}"
        else:
            text = f"{block(a, False)}~{block(b, False)}"
            if show_sections:
                text += f"@{section_of[a]}"
        items.append((sort_key(a), text))
    for j in range(scene.r):
        if ("d", j) not in paired:
            items.append((sort_key(("d", j)), block(("d", j), False)))
    for i in range(len(s.free)):
        bid = ("f", i)
        if bid in paired:
            continue
        if s.hubs[i] is not None:
            items.append((sort_key(bid), f"{block(bid, False)}->h_{s.hubs[i] + 1}"))
        else:
            items.append((sort_key(bid), block(bid, True)))
    items.sort(key=lambda t: t[0])
    return " ".join(text for _, text in items)


def _expand(scene: PartitionScene, s: _Structure, relabel=None) -> Iterator[str]:
    """All fully labelled configurations over one structure."""
    label_units: list[tuple[str, int]] = [("f", i) for i in s.labelled_singles] + [
        ("f", a) for a, _ in s.labelled_pairs
    ]
    lam = scene.sections
    section_choices = [()] if lam is None else itertools.product(range(1, lam + 1), repeat=len(label_units))
    k = len(s.free)
    m = scene.element_colors
    color_slots = [(i, len(s.free[i]) - 1) for i in range(k)] if m != 1 else []
    ecolor_choices = itertools.product(
        *[itertools.product(range(1, m + 1), repeat=width) for _, width in color_slots]
    )
    ecolor_choices = list(ecolor_choices)
    x = scene.block_colors
    bcolor_choices = list(itertools.product(range(1, x + 1), repeat=k)) if x != 1 else [()]
    for sections in section_choices:
        section_of = dict(zip(label_units, sections))
        for a, b in s.labelled_pairs:
            section_of[("f", b)] = section_of.get(("f", a))
        for ecols in ecolor_choices:
            ecolors = {i: cols for (i, _), cols in zip(color_slots, ecols)}
            for bcols in bcolor_choices:
                bcolors = dict(enumerate(bcols))
                yield _render(scene, s, section_of, ecolors, bcolors, relabel)


def iter_configurations(scene: PartitionScene, relabel=None) -> Iterator[str]:
    _check_size(scene)
    for s in _structures(scene):
        yield from _expand(scene, s, relabel)


def list_scene(scene: PartitionScene, limit: int = LISTING_LIMIT) -> SceneCount:
    total = count_scene(scene)
    if total > limit:
        raise SceneTooLarge(f"listing would have {total} lines; limit is {limit}")
    listing = tuple(iter_configurations(scene))
    if len(listing) != total:
        raise AssertionError(f"listing has {len(listing)} lines but the count is {total}")
    return SceneCount(scene, total, listing)


# ---------------------------------------------------------------------------
# family -> scene


def scene_for(q: FamilyQuery) -> PartitionScene:
    """The counting problem realizing a family's combinatorial definition."""
    f = q.family
    if f is Family.Bessel2:
        return PartitionScene(q.n, free_cap=2, blocks=q.k)
    if f is Family.Telephone:
        return PartitionScene(q.n, free_cap=2)
    if f is Family.RBesselNK:
        return PartitionScene(q.n, q.r, dist_cap=2, free_cap=2, blocks=q.k)
    if f is Family.RBesselTotal:
        return PartitionScene(q.n, q.r, dist_cap=2, free_cap=2)
    if f is Family.TrNK:
        return PartitionScene(q.n, q.r, free_cap=2, blocks=q.k)
    if f is Family.TrTotal:
        return PartitionScene(q.n, q.r, free_cap=2)
    if f is Family.RStirling:
        return PartitionScene(q.n, q.r, blocks=q.k)
    if f is Family.Whitney:
        return PartitionScene(q.n, q.r, blocks=q.k, element_colors=q.m)
    if f is Family.Dowling:
        if q.x < 0:
            raise ValueError("a negative block-colour count has no combinatorial meaning")
        return PartitionScene(q.n, q.r, element_colors=q.m, block_colors=q.x)
    if f is Family.RBell:
        if q.lam < 0:
            raise ValueError("a negative block-colour count has no combinatorial meaning")
        return PartitionScene(q.n, q.r, block_colors=q.lam)
    if f is Family.GenB1:
        return PartitionScene(q.n, q.r, pairing=Pairing.GLOBAL_MATCHING)
    if f is Family.GenBLambda:
        return PartitionScene(q.n, q.r, dist_cap=2, free_cap=2, sections=q.lam)
    if f is Family.TildeB:
        return PartitionScene(
            q.n, q.r, dist_cap=1, sections=q.lam, pairing=Pairing.HUB_ATTACHMENT, hub_cap=1
        )
    if f is Family.TrLambda:
        return PartitionScene(q.n, q.r, free_cap=2, sections=q.lam)
    if f is Family.TildeT:
        return PartitionScene(
            q.n, q.r, dist_cap=1, sections=q.lam, pairing=Pairing.HUB_ATTACHMENT, hub_cap=None
        )
    raise ValueError(f"{f.value} has no combinatorial scene")


def gen_b_lambda_literal_scene(r: int, lam: int, n: int) -> PartitionScene:
    """The size-<=2, sectioned reading that also keeps the block matching."""
    return replace(scene_for(FamilyQuery(Family.GenBLambda, n, r=r, lam=lam)), pairing=Pairing.GLOBAL_MATCHING)
