import json
import subprocess
import sys

import pytest

from chowcalc.cli import main

CMD = [sys.executable, "-m", "chowcalc"]


def cli(*args, stdin=None):
    return subprocess.run(CMD + list(args), input=stdin, capture_output=True)


def test_list_varieties(capsysbinary):
    assert main(["--list-varieties"]) == 0
    out = capsysbinary.readouterr().out.decode()
    names = [line.split("\t")[0] for line in out.splitlines()]
    for name in ("P3", "K3quartic", "quintic", "X1", "X2", "X223", "PE2", "H24"):
        assert name in names


def test_run_ok_and_json(tmp_path):
    f = tmp_path / "prog.ccl"
    f.write_text("print bezout(4,4,4);\nprint d(2, 4, 3);\n")
    p = cli("run", str(f), "--format", "json")
    assert p.returncode == 0
    lines = p.stdout.decode().splitlines()
    assert lines[0] == '{"query":"bezout(4,4,4)","value":"64","kind":"scalar"}'
    assert json.loads(lines[1])["value"] == "2"


def test_run_stdin_and_query_error():
    p = cli("run", "-", stdin=b"print d(2, 3, 0);\nprint bezout(1,1,1);")
    assert p.returncode == 1
    assert b"ERROR" in p.stdout and b"bezout(1,1,1)" in p.stdout


def test_parse_error_exit_code():
    p = cli("run", "-", stdin=b"print bezout(4,4;")
    assert p.returncode == 2
    assert p.stderr.decode().startswith("-:1:")
    assert p.stdout == b""


def test_missing_file():
    p = cli("run", "/nonexistent/prog.ccl")
    assert p.returncode == 2


def test_empty_program():
    p = cli("run", "-", stdin=b"")
    assert p.returncode == 0 and p.stdout == b""


@pytest.mark.parametrize("fmt", ["text", "json"])
def test_examples_byte_identical(fmt):
    a = cli("examples", "--paper", "--format", fmt)
    b = cli("examples", "--paper", "--format", fmt)
    assert a.returncode == 0
    assert a.stdout == b.stdout and a.stdout


def test_examples_json_all_reports():
    out = cli("examples", "--paper", "--format", "json").stdout.decode()
    objs = [json.loads(line) for line in out.splitlines()]
    assert all(o["kind"] == "report" for o in objs)
    assert any(o["provenance"].endswith("recorded, not derived") for o in objs)


def test_examples_requires_flag():
    assert cli("examples").returncode == 2
