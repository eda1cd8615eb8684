"""Exact audit of stated identities over parameter grids."""

from .dobinski import DobinskiResult, Enclosure, dobinski_eval, exp_enclosure
from .registry import IdentityDef, lookup, registry
from .runner import (
    SCHEMA,
    AuditFinding,
    AuditReport,
    GridTooLarge,
    default_grid,
    evaluate,
    grid_text,
    parse_grid,
    run_grid,
)

__all__ = [
    "SCHEMA",
    "AuditFinding",
    "AuditReport",
    "DobinskiResult",
    "Enclosure",
    "GridTooLarge",
    "IdentityDef",
    "default_grid",
    "dobinski_eval",
    "evaluate",
    "exp_enclosure",
    "grid_text",
    "lookup",
    "parse_grid",
    "registry",
    "run_grid",
]
