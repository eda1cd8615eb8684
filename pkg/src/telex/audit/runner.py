"""Exact evaluation of registered identities over parameter grids.

A grid maps parameter names (``n k r m lam x``) to sorted value lists.  Each
identity is evaluated at every in-domain point of the product of the values
for its own parameters.  Findings are sorted by identity id and then by the
point tuple, so the report does not depend on worker scheduling.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .. import __version__
from ..arith import GaussInt, format_rat
from ..oracle import ORACLE_LIMIT, count_scene, scene_for
from .dobinski import DobinskiResult
from .registry import DEFAULT_TERMS, PARAM_ORDER, IdentityDef, lookup, registry

__all__ = [
    "SCHEMA",
    "AuditFinding",
    "AuditReport",
    "GridTooLarge",
    "IdentitySummary",
    "default_grid",
    "evaluate",
    "grid_text",
    "parse_grid",
    "run_grid",
]

SCHEMA = "telex-audit/1"

# largest value accepted for each grid parameter
GRID_LIMITS = {"n": 30, "k": 30, "r": 12, "m": 8, "lam": 12, "x": 30}

NOTES = (
    "holds/fails compare exact integers, rationals or Gaussian integers; "
    "enclosure rows compare the left side against a certified rational interval",
    "empty sums are 0; an empty binomial chain in thm-4.7 (r = 0) leaves i_r equal to n",
    "thm-6.1 is evaluated as displayed: its inner sum does not depend on the outer index m",
    "terms = M means the partial sum over m = 0..M-1 plus a geometric tail bound",
    "entries with variant_of set are candidate corrections of the entry they name",
)

_ALIASES = {"lambda": "lam", "λ": "lam"}


class GridTooLarge(ValueError):
    """A grid value is beyond what the exact routes are sized for."""


def default_grid() -> dict[str, list[int]]:
    return {
        "n": list(range(7)),
        "k": list(range(7)),
        "r": list(range(4)),
        "m": [1, 2, 3],
        "lam": list(range(4)),
        "x": list(range(4)),
    }


def _canon_name(name: str) -> str:
    name = name.strip()
    name = _ALIASES.get(name, name)
    if name not in PARAM_ORDER:
        raise ValueError(f"unknown grid parameter {name!r}")
    return name


def parse_grid(text: str) -> dict[str, list[int]]:
    """Parse ``"r=1,lambda=0..2,n=3"``.  Ranges are inclusive."""
    grid: dict[str, list[int]] = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ValueError(f"grid entry {part!r} is not name=value")
        name, value = part.split("=", 1)
        name = _canon_name(name)
        if name in grid:
            raise ValueError(f"grid parameter {name!r} given twice")
        try:
            if ".." in value:
                lo, hi = (int(v) for v in value.split("..", 1))
                values = list(range(lo, hi + 1))
            else:
                values = [int(value)]
        except ValueError:
            raise ValueError(f"bad grid value {value!r} for {name}") from None
        if not values:
            raise ValueError(f"empty range for {name}")
        grid[name] = values
    if not grid:
        raise ValueError("empty grid")
    return grid


def _check_grid(grid: Mapping[str, Sequence[int]]) -> dict[str, list[int]]:
    out = {}
    for name, values in grid.items():
        name = _canon_name(name)
        vals = sorted(set(int(v) for v in values))
        if vals and vals[0] < 0:
            raise ValueError(f"grid values for {name} must be non-negative")
        if vals and vals[-1] > GRID_LIMITS[name]:
            raise GridTooLarge(f"{name}={vals[-1]} exceeds the limit {GRID_LIMITS[name]}")
        out[name] = vals
    return out


def grid_text(grid: Mapping[str, Sequence[int]]) -> str:
    parts = []
    for name in PARAM_ORDER:
        if name not in grid:
            continue
        vals = list(grid[name])
        if vals == list(range(vals[0], vals[-1] + 1)) and len(vals) > 1:
            parts.append(f"{name}={vals[0]}..{vals[-1]}")
        else:
            parts.append(f"{name}=" + "|".join(str(v) for v in vals))
    return ",".join(parts)


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return format_rat(value)
    return str(value)


@dataclass(frozen=True)
class AuditFinding:
    id: str
    point: tuple[tuple[str, int], ...]
    lhs: str
    rhs: str
    status: str  # holds | fails | inconclusive
    note: str = ""

    @property
    def point_dict(self) -> dict[str, int]:
        return dict(self.point)

    def point_text(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.point)

    def to_json(self) -> dict:
        out = {"point": self.point_dict, "lhs": self.lhs, "rhs": self.rhs, "status": self.status}
        if self.note:
            out["note"] = self.note
        return out


def _resolve(identity_id: str) -> IdentityDef:
    ident = lookup(identity_id)
    if ident is None:
        raise KeyError(f"unknown identity {identity_id!r}")
    return ident


def _point_of(ident: IdentityDef, point: Mapping[str, int]) -> tuple[tuple[str, int], ...]:
    given = {_canon_name(k): int(v) for k, v in point.items()}
    missing = [p for p in ident.params if p not in given]
    if missing:
        raise ValueError(f"{ident.id} needs parameters {', '.join(missing)}")
    ordered = [p for p in PARAM_ORDER if p in ident.params]
    values = tuple((p, given[p]) for p in ordered)
    for p, v in values:
        if v < 0 or (p == "m" and v < 1):
            raise ValueError(f"{ident.id}: {p}={v} outside the domain ({ident.domain_text})")
    if not ident.in_domain(**dict(values)):
        raise ValueError(f"{ident.id}: point {dict(values)} outside the domain ({ident.domain_text})")
    return values


def _in_domain(ident: IdentityDef, values: Mapping[str, int]) -> bool:
    if values.get("m", 1) < 1:
        return False
    return ident.in_domain(**values)


def _finding(ident: IdentityDef, point: tuple[tuple[str, int], ...], terms: int) -> AuditFinding:
    kw = dict(point)
    lhs = ident.lhs(**kw)
    if ident.kind == "enclosure":
        res: DobinskiResult = ident.rhs(**kw, terms=terms)
        rhs = str(res.enclosure) if res.enclosure is not None else "unbounded"
        if lhs != res.target:
            raise AssertionError(f"{ident.id}: target mismatch {lhs} != {res.target}")
        return AuditFinding(ident.id, point, _fmt(lhs), rhs, res.status, f"enclosure, {terms} terms")
    rhs = ident.rhs(**kw)
    status = "holds" if lhs == rhs else "fails"
    return AuditFinding(ident.id, point, _fmt(lhs), _fmt(rhs), status)


def evaluate(identity_id: str, point: Mapping[str, int], terms: int = DEFAULT_TERMS) -> AuditFinding:
    """Evaluate one identity at one point; params outside its list are ignored.

    Raises KeyError for unknown ids and ValueError for points outside the
    identity's domain.
    """
    ident = _resolve(identity_id)
    return _finding(ident, _point_of(ident, point), terms)


def _points(ident: IdentityDef, grid: Mapping[str, Sequence[int]]) -> list[tuple[tuple[str, int], ...]]:
    ordered = [p for p in PARAM_ORDER if p in ident.params]
    if any(p not in grid for p in ordered):
        return []
    out = []
    for combo in itertools.product(*(grid[p] for p in ordered)):
        values = dict(zip(ordered, combo))
        if _in_domain(ident, values):
            out.append(tuple(zip(ordered, combo)))
    return out


@dataclass(frozen=True)
class OracleCheck:
    point: tuple[tuple[str, int], ...]
    oracle: str
    lhs: str
    agrees: bool | None  # None when the scene is too large

    def to_json(self) -> dict:
        return {
            "point": dict(self.point),
            "oracle": self.oracle,
            "lhs": self.lhs,
            "agrees": self.agrees,
        }


def _oracle_check(ident: IdentityDef, point, terms: int) -> OracleCheck | None:
    if ident.oracle_lhs is None:
        return None
    query = ident.oracle_lhs(**dict(point))
    lhs = ident.lhs(**dict(point))
    scene = scene_for(query)
    if scene.size > ORACLE_LIMIT:
        return OracleCheck(point, "skipped", _fmt(lhs), None)
    oracle = count_scene(scene)
    value = lhs.re if isinstance(lhs, GaussInt) and lhs.is_real else lhs
    return OracleCheck(point, str(oracle), _fmt(lhs), oracle == value)


@dataclass
class IdentitySummary:
    ident: IdentityDef
    points: int
    findings: list[AuditFinding]
    oracle_check: OracleCheck | None
    complete: bool = True

    def count(self, status: str) -> int:
        return sum(1 for f in self.findings if f.status == status)

    @property
    def first_counterexample(self) -> AuditFinding | None:
        return next((f for f in self.findings if f.status == "fails"), None)

    def to_json(self) -> dict:
        ce = self.first_counterexample
        return {
            "id": self.ident.id,
            "statement": self.ident.statement,
            "params": [p for p in PARAM_ORDER if p in self.ident.params],
            "domain": self.ident.domain_text,
            "variant_of": self.ident.variant_of,
            "kind": self.ident.kind,
            "lhs_route": self.ident.lhs_route,
            "summary": {
                "points": self.points,
                "evaluated": len(self.findings),
                "holds": self.count("holds"),
                "fails": self.count("fails"),
                "inconclusive": self.count("inconclusive"),
                "first_counterexample": ce.to_json() if ce else None,
            },
            "oracle_check": self.oracle_check.to_json() if self.oracle_check else None,
            "findings": [f.to_json() for f in self.findings],
        }


@dataclass
class AuditReport:
    grid: dict[str, list[int]]
    identities: list[IdentitySummary]
    terms: int = DEFAULT_TERMS
    complete: bool = True
    notes: tuple[str, ...] = NOTES
    version: str = field(default=__version__)

    def summary(self, identity_id: str) -> IdentitySummary:
        for s in self.identities:
            if s.ident.id == identity_id:
                return s
        raise KeyError(identity_id)

    @property
    def findings(self) -> list[AuditFinding]:
        return [f for s in self.identities for f in s.findings]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "tool": "telex",
            "version": self.version,
            "grid": {k: self.grid[k] for k in PARAM_ORDER if k in self.grid},
            "grid_text": grid_text(self.grid),
            "dobinski_terms": self.terms,
            "complete": self.complete,
            "notes": list(self.notes),
            "identities": [s.to_json() for s in self.identities],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=True) + "\n"

    def markdown(self) -> str:
        lines = [
            "# Identity audit",
            "",
            f"telex {self.version}, grid `{grid_text(self.grid)}`, "
            f"enclosure terms {self.terms}, complete: {'yes' if self.complete else 'no'}",
            "",
            "Notes:",
            "",
        ]
        lines += [f"- {n}" for n in self.notes]
        lines += [
            "",
            "| id | variant of | points | holds | fails | inconclusive | oracle | first counterexample |",
            "|---|---|---|---|---|---|---|---|",
        ]
        for s in self.identities:
            ce = s.first_counterexample
            oc = s.oracle_check
            oracle = "-" if oc is None else {True: "agrees", False: "DISAGREES", None: "skipped"}[oc.agrees]
            ce_text = f"{ce.point_text()}: lhs {ce.lhs}, rhs {ce.rhs}" if ce else "-"
            lines.append(
                f"| {s.ident.id} | {s.ident.variant_of or '-'} | {len(s.findings)}/{s.points} | "
                f"{s.count('holds')} | {s.count('fails')} | {s.count('inconclusive')} | {oracle} | {ce_text} |"
            )
        failing = [s for s in self.identities if s.count("fails")]
        if failing:
            lines += ["", "## Failing points", ""]
            for s in failing:
                lines += [f"### {s.ident.id}", "", f"`{s.ident.statement}`", "", "| point | lhs | rhs |", "|---|---|---|"]
                lines += [f"| {f.point_text()} | {f.lhs} | {f.rhs} |" for f in s.findings if f.status == "fails"]
                lines.append("")
        return "\n".join(lines).rstrip("\n") + "\n"


def _work(identity_id: str, points, terms: int, deadline: float | None):
    """Evaluate one identity's points; stops early past the deadline."""
    ident = _resolve(identity_id)
    findings = []
    for p in points:
        if deadline is not None and time.time() > deadline:
            return identity_id, findings, False, None
        findings.append(_finding(ident, p, terms))
    check = _oracle_check(ident, points[0], terms) if points else None
    return identity_id, findings, True, check


def run_grid(
    ids: Iterable[str] | str,
    grid: Mapping[str, Sequence[int]] | None = None,
    workers: int = 1,
    max_seconds: float | None = None,
    terms: int = DEFAULT_TERMS,
    progress: Callable[[str, int, int], None] | None = None,
) -> AuditReport:
    """Evaluate ``ids`` (or ``"all"``) on every in-domain grid point.

    Past ``max_seconds`` the remaining points are skipped and the report is
    flagged incomplete.  ``progress(id, done, total)`` is called once per
    finished identity.
    """
    if isinstance(ids, str):
        ids = [ids]
    ids = list(ids)
    if ids == ["all"]:
        idents = list(registry())
    else:
        idents = [_resolve(i) for i in ids]
    idents = sorted({i.id: i for i in idents}.values(), key=lambda i: i.id)
    grid = _check_grid(default_grid() if grid is None else grid)
    deadline = None if max_seconds is None else time.time() + max_seconds

    jobs = [(ident, _points(ident, grid)) for ident in idents]
    results: dict[str, tuple] = {}
    total = len(jobs)
    if workers > 1 and total > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_work, ident.id, pts, terms, deadline) for ident, pts in jobs]
            for done, fut in enumerate(futures, 1):
                res = fut.result()
                results[res[0]] = res
                if progress:
                    progress(res[0], done, total)
    else:
        for done, (ident, pts) in enumerate(jobs, 1):
            results[ident.id] = _work(ident.id, pts, terms, deadline)
            if progress:
                progress(ident.id, done, total)

    summaries = []
    for ident, pts in jobs:
        _, findings, complete, check = results[ident.id]
        findings.sort(key=lambda f: f.point)
        summaries.append(IdentitySummary(ident, len(pts), findings, check, complete))
    return AuditReport(
        grid=grid,
        identities=summaries,
        terms=terms,
        complete=all(s.complete for s in summaries),
    )
