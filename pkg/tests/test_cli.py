"""End-to-end tests of every subcommand, using only the repository fixtures."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from sammy.cli import main

P = FIXTURES / "programs"
S = FIXTURES / "structures"
M = FIXTURES / "machines"


def cli(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def test_run_ok(capsys):
    code, out, _ = cli(capsys, "run", P / "one.sammy")
    assert code == 0
    assert json.loads(out)["kind"] == "category"
    code, out, _ = cli(capsys, "run", P / "initial_pointer.sammy")
    data = json.loads(out)
    assert code == 0 and data[0]["object_map"] == [0] and data[1]["components"] == [0, 1]


def test_run_with_inputs_and_stats(capsys):
    code, out, err = cli(capsys, "run", P / "relative.sammy", S / "two.json", "--stats")
    assert code == 0 and json.loads(out)["object_map"] == [0, 1]
    assert json.loads(err)["ops"] == 1
    code, out, _ = cli(capsys, "run", P / "relative.sammy", "builtin:chain:n=3")
    assert code == 0 and json.loads(out)["object_map"] == [0, 1, 2]


def test_run_pointer_programs(capsys):
    for name in ("log727.sammy", "binary727.sammy"):
        code, out, _ = cli(capsys, "run", P / name)
        assert code == 0
        assert json.loads(out)["object_map"] == [727]


def test_run_formats(capsys):
    code, out, _ = cli(capsys, "run", P / "pow_two_two.sammy", "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = cli(capsys, "--format", "text", "run", P / "pow_two_two.sammy")
    assert code == 0 and out.startswith("category: 3 objects")


@pytest.mark.parametrize(
    "program,code",
    [
        ("bad_syntax.sammy", 2),
        ("return_not_last.sammy", 2),
        ("kind_error.sammy", 3),
        ("cat_symbolic.sammy", 3),
        ("loop.sammy", 4),
    ],
)
def test_run_exit_codes(capsys, program, code):
    got, _, err = cli(capsys, "run", P / program, "--max-steps", "100")
    assert got == code and err


def test_resource_caps(capsys):
    code, _, err = cli(capsys, "run", P / "pow_two_two.sammy", "--max-objects", "2")
    assert code == 4 and "SizeLimit" in err


def test_missing_file(capsys):
    code, _, _ = cli(capsys, "run", P / "does_not_exist.sammy")
    assert code == 1


def test_check(capsys):
    code, out, _ = cli(capsys, "check", S / "three_chain.json")
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = cli(capsys, "check", S / "bad_category.json")
    assert code == 5 and json.loads(out)["violations"]
    code, _, _ = cli(capsys, "check", S / "not_json.json")
    assert code == 2


def test_iso(capsys):
    code, out, _ = cli(capsys, "iso", S / "pow_two_two.json", S / "three_chain.json")
    assert code == 0 and json.loads(out)["isomorphic"] is True and "witness" in json.loads(out)
    code, out, _ = cli(capsys, "iso", S / "two.json", S / "two_op.json")
    assert code == 0
    code, out, _ = cli(capsys, "iso", S / "two.json", S / "two_iso.json")
    assert code == 5 and json.loads(out)["isomorphic"] is False


def test_export(capsys):
    for fmt in ("json", "dot", "text"):
        code, out, _ = cli(capsys, "export", S / "z2.json", "--format", fmt)
        assert code == 0 and out.strip()
    code, out, _ = cli(capsys, "export", S / "id_two.json")
    assert json.loads(out)["kind"] == "functor"


def test_build(capsys):
    code, out, _ = cli(capsys, "build", "chain", "n=4")
    assert code == 0 and json.loads(out) == {"kind": "category", "chain": 4}
    code, out, _ = cli(capsys, "build", "omega_i", "N=2", "--format", "text")
    assert code == 0 and "3 objects" in out
    code, out, _ = cli(capsys, "build", "pointer", "N=8", "n=3")
    assert json.loads(out)["object_map"] == [3]
    code, _, _ = cli(capsys, "build", "pointer", "N=2", "n=9")
    assert code == 3


def test_ksearch(capsys):
    code, out, _ = cli(capsys, "ksearch", S / "one.json", "--budget", "2")
    r = json.loads(out)
    assert code == 0 and r["minLength"] == 1 and r["status"] == "Found"
    code, out, _ = cli(capsys, "ksearch", S / "three_chain.json", "--budget", "4")
    assert code == 0 and json.loads(out)["minLength"] <= 2
    code, out, _ = cli(capsys, "ksearch", S / "two.json", "--given", S / "two.json")
    assert code == 0 and json.loads(out)["minLength"] == 0
    code, out, _ = cli(capsys, "ksearch", S / "discrete_two.json", "--budget", "1")
    assert code == 5 and json.loads(out)["status"] == "NotFoundWithinBudget"


def test_enumerate(capsys):
    code, out, _ = cli(capsys, "enumerate", "--max-tokens", "7", "--limit", "25")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 25
    codes = [r["code"] for r in rows]
    assert codes == sorted(codes)


def test_tm(capsys):
    code, out, _ = cli(capsys, "tm", "busy-beaver-2", "--tape", "________", "--head", "4")
    r = json.loads(out)
    assert code == 0 and r == {"tape": "__1111__", "head": 4, "state": "H", "steps": 6, "halted": True}
    code, out, _ = cli(capsys, "tm", M / "unary_copy.json", "--tape", "11______")
    assert code == 0 and json.loads(out)["tape"] == "11_11___"
    code, out, _ = cli(capsys, "tm", M / "binary_increment.json", "--tape", "_1011_", "--head", "4")
    assert code == 0 and json.loads(out)["tape"] == "_1100_"
    code, _, err = cli(capsys, "tm", "binary-increment", "--tape", "1", "--head", "0")
    assert code == 3 and "BoundaryHit" in err
    code, _, _ = cli(capsys, "tm", S / "not_json.json", "--tape", "1")
    assert code == 2


def test_env_overrides(capsys, monkeypatch):
    monkeypatch.setenv("MAX_STEPS", "10")
    code, _, _ = cli(capsys, "run", P / "loop.sammy")
    assert code == 4
    monkeypatch.setenv("FORMAT", "text")
    code, out, _ = cli(capsys, "run", P / "one.sammy")
    assert code == 0 and out.startswith("category")
    monkeypatch.setenv("MAX_STEPS", "ten")
    code, _, _ = cli(capsys, "run", P / "one.sammy")
    assert code == 2


def test_entry_point_deterministic():
    cmds = [
        ["run", str(P / "pow_two_two.sammy")],
        ["ksearch", str(S / "three_chain.json"), "--budget", "2"],
        ["enumerate", "--max-tokens", "6", "--limit", "10"],
        ["tm", "unary-copy", "--tape", "1_____"],
    ]
    for args in cmds:
        outs = [
            subprocess.run([sys.executable, "-m", "sammy.cli", *args], capture_output=True, text=True, check=True).stdout
            for _ in range(2)
        ]
        assert outs[0] == outs[1] and outs[0]
