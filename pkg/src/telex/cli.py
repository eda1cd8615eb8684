"""Command-line front end: ``telex seq|audit|egf|enumerate``.

Exit codes: 0 success (failing identities are still a successful audit),
2 bad arguments, 3 a size limit was hit, 4 the audit grid was not finished.

Every subcommand accepts ``--config FILE``.  The file holds ``key = value``
lines whose keys are the long flag names without the leading dashes
(``family = telephone``, ``n-max = 8``); ``#`` starts a comment.  Switches
such as ``quiet`` take ``true`` or ``false``.  Flags given on the command
line win over the file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .arith import format_rat
from .audit import GridTooLarge, default_grid, lookup, parse_grid, run_grid
from .families import FAMILY_PARAMS, Family, FamilyQuery, family_egf, sequence
from .oracle import LISTING_LIMIT, SceneTooLarge, list_scene, scene_for

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_LIMIT = 3
EXIT_INCOMPLETE = 4

SEQ_LIMIT = 5000
EGF_ORDER_LIMIT = 500

FORMATS = ("list", "bfile", "csv", "json")


class UsageError(Exception):
    pass


class LimitError(Exception):
    pass


def _family_flags(p: argparse.ArgumentParser) -> None:
    names = ", ".join(f.value for f in Family)
    p.add_argument("--family", required=True, help=f"family id: {names}")
    p.add_argument("--k", type=int, help="block count k")
    p.add_argument("--r", type=int, help="number of distinguished elements r")
    p.add_argument("--m", type=int, help="colour count m (Whitney, Dowling)")
    p.add_argument("--lambda", dest="lam", type=int, help="section or block-colour count lambda")
    p.add_argument("--x", type=int, help="Dowling variable x")


def _config_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="FILE", help="key=value file mirroring the long flags")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="telex",
        description="Exact telephone, Bessel, Whitney and Dowling numbers with an identity auditor.",
    )
    parser.add_argument("--version", action="version", version=f"telex {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = sub.add_parser("seq", help="print a sequence table", description="Print values for n in a range.")
    _family_flags(p)
    p.add_argument("--n-min", type=int, default=0, help="first n (default 0)")
    p.add_argument("--n-max", type=int, required=True, help=f"last n (at most {SEQ_LIMIT})")
    p.add_argument("--format", choices=FORMATS, default="list", help="output format (default list)")
    p.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    _config_flag(p)

    p = sub.add_parser("audit", help="evaluate identities over a grid", description="Audit identities.")
    p.add_argument("--ids", required=True, help="comma-separated identity ids, or all")
    p.add_argument("--default-grid", action="store_true", help="use the default grid (the default)")
    p.add_argument("--grid", help="grid such as r=1,lambda=0..2,n=0..6 (ranges inclusive)")
    p.add_argument("--terms", type=int, default=40, help="terms in enclosure sums (default 40)")
    p.add_argument("--out", metavar="PATH", help="write the JSON report to PATH instead of stdout")
    p.add_argument("--markdown", metavar="PATH", help="also write a Markdown report to PATH")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--max-seconds", type=float, help="stop and flag the report incomplete after this")
    p.add_argument("--quiet", action="store_true", help="no progress on stderr")
    _config_flag(p)

    p = sub.add_parser("egf", help="print a truncated generating function", description="Print an EGF.")
    _family_flags(p)
    p.add_argument("--order", type=int, required=True, help=f"truncation order (at most {EGF_ORDER_LIMIT})")
    _config_flag(p)

    p = sub.add_parser("enumerate", help="list the configurations of a small case", description="List objects.")
    _family_flags(p)
    p.add_argument("--n", type=int, required=True, help="size n")
    p.add_argument("--limit", type=int, default=LISTING_LIMIT, help=f"most lines to print (default {LISTING_LIMIT})")
    _config_flag(p)
    return parser


def _config_tokens(parser: argparse.ArgumentParser, command: str, path: str) -> list[str]:
    sub = _subparser(parser, command)
    flags = {}
    for action in sub._actions:
        for opt in action.option_strings:
            if opt.startswith("--") and opt not in ("--help", "--config"):
                flags[opt[2:]] = action
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    tokens: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in flags:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r} for {command}")
        if isinstance(flags[key], argparse._StoreTrueAction):
            if value.lower() not in ("true", "false"):
                raise UsageError(f"{path}:{lineno}: {key} takes true or false")
            if value.lower() == "true":
                tokens.append(f"--{key}")
        else:
            tokens += [f"--{key}", value]
    return tokens


def _subparser(parser: argparse.ArgumentParser, command: str) -> argparse.ArgumentParser:
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[command]
    raise AssertionError("no subcommands")


def _config_path(argv: Sequence[str]) -> str | None:
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def _parse(argv: Sequence[str]) -> argparse.Namespace:
    parser = build_parser()
    path = _config_path(argv)
    command = next((t for t in argv if t in COMMANDS), None)
    if path and command:
        idx = list(argv).index(command)
        # command-line flags come last so they override the file
        argv = list(argv[: idx + 1]) + _config_tokens(parser, command, path) + list(argv[idx + 1 :])
    return parser.parse_args(argv)


def _query(args: argparse.Namespace, n: int) -> FamilyQuery:
    try:
        family = Family.parse(args.family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    given = {name: getattr(args, name) for name in ("k", "r", "m", "lam", "x")}
    wanted = FAMILY_PARAMS[family]
    missing = [n_ for n_ in wanted if given[n_] is None]
    extra = [n_ for n_, v in given.items() if v is not None and n_ not in wanted]
    if missing or extra:
        need = ", ".join("--" + ("lambda" if w == "lam" else w) for w in wanted) or "none"
        raise UsageError(f"{family.value} takes parameters: {need}")
    try:
        return FamilyQuery(family, n, **{k: v for k, v in given.items() if v is not None})
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)


def cmd_seq(args: argparse.Namespace) -> int:
    if args.n_min < 0 or args.n_max < args.n_min:
        raise UsageError("need 0 <= n-min <= n-max")
    if args.n_max > SEQ_LIMIT:
        raise LimitError(f"n-max {args.n_max} exceeds the limit {SEQ_LIMIT}")
    q = _query(args, 0)
    try:
        table = sequence(q, args.n_max, args.n_min)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "list":
        text = ",".join(str(v) for v in table.values) + "\n"
    elif args.format == "bfile":
        text = "".join(f"{n} {v}\n" for n, v in table.rows)
    elif args.format == "csv":
        text = "n,value\n" + "".join(f"{n},{v}\n" for n, v in table.rows)
    else:
        payload = {
            "family": q.family.value,
            "params": {k: v for k, v in q.params().items() if k != "n"},
            "rows": [{"n": n, "value": v} for n, v in table.rows],
        }
        text = json.dumps(payload, indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    if args.default_grid and args.grid:
        raise UsageError("--default-grid and --grid are exclusive")
    if args.terms < 1 or args.workers < 1:
        raise UsageError("--terms and --workers must be positive")
    ids = [s.strip() for s in args.ids.split(",") if s.strip()]
    if ids != ["all"]:
        unknown = [i for i in ids if lookup(i) is None]
        if unknown or not ids:
            raise UsageError(f"unknown identity ids: {', '.join(unknown) or '(none given)'}")
    try:
        grid = parse_grid(args.grid) if args.grid else default_grid()
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    def progress(identity_id: str, done: int, total: int) -> None:
        if not args.quiet:
            print(f"[{done}/{total}] {identity_id}", file=sys.stderr)

    try:
        report = run_grid(
            ids, grid, workers=args.workers, max_seconds=args.max_seconds, terms=args.terms, progress=progress
        )
    except GridTooLarge as exc:
        raise LimitError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(report.dumps(), args.out)
    if args.markdown:
        Path(args.markdown).write_text(report.markdown(), encoding="utf-8")
    if not report.complete:
        print("telex: time limit reached, report is incomplete", file=sys.stderr)
        return EXIT_INCOMPLETE
    return EXIT_OK


def cmd_egf(args: argparse.Namespace) -> int:
    if args.order < 0:
        raise UsageError("--order must be non-negative")
    if args.order > EGF_ORDER_LIMIT:
        raise LimitError(f"order {args.order} exceeds the limit {EGF_ORDER_LIMIT}")
    q = _query(args, 0)
    try:
        series = family_egf(q, args.order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    coeffs = ", ".join(format_rat(c) for c in series.coeffs)
    counts = ",".join(str(c) if isinstance(c, int) else format_rat(c) for c in series.counts)
    print(f"{coeffs} | counts {counts}")
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.n < 0 or args.limit < 0:
        raise UsageError("--n and --limit must be non-negative")
    q = _query(args, args.n)
    try:
        scene = scene_for(q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        result = list_scene(scene, args.limit)
    except SceneTooLarge as exc:
        raise LimitError(str(exc)) from None
    out = sys.stdout
    for line in result.listing:
        out.write(line + "\n")
    out.write(f"total {result.total}\n")
    return EXIT_OK


COMMANDS = {"seq": cmd_seq, "audit": cmd_audit, "egf": cmd_egf, "enumerate": cmd_enumerate}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _parse(argv)
        return COMMANDS[args.command](args)
    except SystemExit as exc:  # argparse
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"telex: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LimitError as exc:
        print(f"telex: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
