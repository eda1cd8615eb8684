import json
import re
import subprocess
import sys

import pytest

from telex.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_seq_bfile(capsys):
    code, out, _ = run(capsys, "seq", "--family", "telephone", "--n-max", "8", "--format", "bfile")
    assert code == 0
    lines = out.split("\n")
    assert lines[-1] == ""
    assert lines[:-1] == [f"{n} {v}" for n, v in enumerate([1, 1, 2, 4, 10, 26, 76, 232, 764])]
    assert out.isascii() and not any(line != line.rstrip() for line in lines)


def test_seq_list_and_csv(capsys):
    assert run(capsys, "seq", "--family", "r-bessel-total", "--r", "2", "--n-max", "8")[1] == (
        "1,3,8,22,66,206,688,2388,8732\n"
    )
    assert run(capsys, "seq", "--family", "dowling", "--m", "2", "--r", "0", "--x", "1", "--n-max", "3")[1] == (
        "1,1,3,11\n"
    )
    out = run(capsys, "seq", "--family", "telephone", "--n-min", "2", "--n-max", "3", "--format", "csv")[1]
    assert out == "n,value\n2,2\n3,4\n"


def test_seq_json(capsys, tmp_path):
    path = tmp_path / "t.json"
    code, out, _ = run(capsys, "seq", "--family", "tilde-t", "--r", "1", "--lambda", "1", "--n-max", "2",
                       "--format", "json", "--out", str(path))
    assert code == 0 and out == ""
    doc = json.loads(path.read_text())
    assert doc["params"] == {"r": 1, "lam": 1}
    assert [row["value"] for row in doc["rows"]] == [1, 2, 7]


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["--family", "telephone", "--order", "4"], "1, 1, 1, 2/3, 5/12 | counts 1,1,2,4,10\n"),
        (["--family", "tilde-t", "--r", "1", "--lambda", "1", "--order", "2"], "1, 2, 7/2 | counts 1,2,7\n"),
        (["--family", "r-stirling", "--r", "1", "--k", "1", "--order", "3"], "0, 1, 3/2, 7/6 | counts 0,1,3,7\n"),
    ],
)
def test_egf(capsys, argv, expected):
    assert run(capsys, "egf", *argv)[1] == expected


def test_enumerate(capsys):
    out = run(capsys, "enumerate", "--family", "telephone", "--n", "3")[1].splitlines()
    assert len(out) == 5 and out[-1] == "total 4"
    out = run(capsys, "enumerate", "--family", "r-bessel-total", "--r", "2", "--n", "2")[1].splitlines()
    assert len(out) == 9 and out[-1] == "total 8"
    out = run(capsys, "enumerate", "--family", "gen-b1", "--r", "0", "--n", "2")[1].splitlines()
    assert len(out) == 4 and out[-1] == "total 3"


def test_audit_single_point(capsys):
    code, out, err = run(capsys, "audit", "--ids", "thm-4.2", "--grid", "r=1,lambda=1,n=1")
    assert code == 0 and "thm-4.2" in err
    (finding,) = json.loads(out)["identities"][0]["findings"]
    assert (finding["lhs"], finding["rhs"], finding["status"]) == ("4", "5", "fails")


def test_audit_eq10_holds(capsys, tmp_path):
    md = tmp_path / "r.md"
    code, out, _ = run(capsys, "audit", "--ids", "eq-10", "--grid", "m=1..2,r=0..1,n=0..4,x=0..3",
                       "--quiet", "--markdown", str(md))
    summary = json.loads(out)["identities"][0]["summary"]
    assert code == 0 and summary["fails"] == 0 and summary["holds"] == summary["points"] == 80
    assert md.read_text().startswith("# Identity audit")


@pytest.mark.parametrize(
    "argv,code",
    [
        (["seq", "--family", "nope", "--n-max", "3"], 2),
        (["seq", "--family", "telephone", "--r", "1", "--n-max", "3"], 2),
        (["seq", "--family", "whitney", "--r", "1", "--k", "1", "--n-max", "3"], 2),
        (["seq", "--family", "telephone", "--n-max", "-1"], 2),
        (["seq", "--family", "telephone", "--n-max", "999999"], 3),
        (["egf", "--family", "hermite", "--order", "3"], 2),
        (["egf", "--family", "telephone", "--order", "100000"], 3),
        (["enumerate", "--family", "telephone", "--n", "13"], 3),
        (["enumerate", "--family", "telephone", "--n", "8", "--limit", "5"], 3),
        (["audit", "--ids", "nope"], 2),
        (["audit", "--ids", "tsum", "--grid", "q=1"], 2),
        (["audit", "--ids", "tsum", "--grid", "n=1", "--default-grid"], 2),
        (["audit", "--ids", "tsum", "--grid", "n=500"], 3),
        (["audit", "--ids", "all", "--max-seconds", "0", "--quiet"], 4),
        (["bogus"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# table\nfamily = telephone\nn-max = 5\nformat = csv\n")
    out = run(capsys, "seq", "--config", str(cfg), "--n-max", "2")[1]
    assert out == "n,value\n0,1\n1,1\n2,2\n"  # the flag beats the file
    cfg.write_text("ids = tsum\ngrid = n=0..3\nquiet = true\n")
    code, out, err = run(capsys, "audit", "--config", str(cfg))
    assert code == 0 and err == "" and json.loads(out)["grid"] == {"n": [0, 1, 2, 3]}
    cfg.write_text("colour = red\n")
    assert main(["seq", "--config", str(cfg), "--family", "telephone", "--n-max", "1"]) == 2
    assert main(["seq", "--config", str(tmp_path / "missing"), "--family", "telephone", "--n-max", "1"]) == 2


def _subparsers():
    parser = build_parser()
    action = next(a for a in parser._actions if a.__class__.__name__ == "_SubParsersAction")
    return action.choices


@pytest.mark.parametrize("name", ["seq", "audit", "egf", "enumerate"])
def test_help_lists_exactly_the_accepted_flags(name):
    sub = _subparsers()[name]
    accepted = {opt for a in sub._actions for opt in a.option_strings if opt.startswith("--")}
    shown = set(re.findall(r"(?<![\w-])--[a-z][a-z-]*", sub.format_help()))
    assert shown == accepted


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "telex", "seq", "--family", "telephone", "--n-max", "4"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout == "1,1,2,4,10\n"


def test_output_is_deterministic(capsys):
    argv = ["audit", "--ids", "thm-3.1,eq-300", "--quiet"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
