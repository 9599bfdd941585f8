import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starrees.cli import main

WORKED = {"field": "Q", "U": [[1, 0], [1, 1], [1, 2], [1, 3]], "c": 2}


def run(argv, doc=None, monkeypatch=None, capsys=None):
    if doc is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(doc if isinstance(doc, str) else json.dumps(doc)))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def cli(monkeypatch, capsys):
    return lambda argv, doc=None: run(argv, doc, monkeypatch, capsys)


def test_rees_equations_text(cli):
    code, out, _ = cli(["rees", "equations"], WORKED)
    assert code == 0
    assert "linear relations (5)" in out and "fiber generators (4)" in out


def test_rees_equations_json(cli):
    code, out, _ = cli(["rees", "equations", "--format", "json"], WORKED)
    data = json.loads(out)
    assert code == 0
    assert len(data["linear"]) == 5 and len(data["fiber"]) == 4
    assert data["n"] == 4 and data["t"] == 6


def test_primary(cli):
    code, out, _ = cli(["rees", "primary", "--format", "json"], WORKED)
    data = json.loads(out)
    assert code == 0 and data["Q"] == ["T1", "T5"]


def test_dual_and_minors(cli):
    code, out, _ = cli(["rees", "dual", "--format", "json"], WORKED)
    B = json.loads(out)["B"]
    assert code == 0
    assert B[0] == ["T1", "0", "0", "T5", "0"]
    assert B[3][3] == "-T4 + T5"
    code, out, _ = cli(["rees", "minors", "--all", "--format", "json"], WORKED)
    assert code == 0
    closed_code, closed, _ = cli(["rees", "minors", "--format", "json"], WORKED)
    assert closed_code == 0 and closed != out


def test_star_checks_exit_codes(cli):
    assert cli(["star", "check", "--gn"], WORKED)[0] == 1
    assert cli(["star", "check", "--gs", "3"], WORKED)[0] == 0
    assert cli(["star", "check", "--linear-type"], WORKED)[0] == 1
    xyz = {"forms": ["x", "y", "z"], "variables": ["x", "y", "z"], "c": 2}
    code, out, _ = cli(["star", "check", "--linear-type"], xyz)
    assert code == 0
    code, out, _ = cli(["star", "check", "--nlt"], WORKED)
    assert code == 0 and "x2, x3, x4, L2" in out


def test_forms_input_path(cli):
    doc = {"forms": ["x", "y", "z"], "variables": ["x", "y", "z"], "c": 2}
    code, out, _ = cli(["star", "gens"], doc)
    assert code == 0
    assert "x = x1" in out or "x1 = x" in out


@pytest.mark.parametrize(
    "doc,needle",
    [
        ('{"U": [[1], [x]]}', "line 1"),
        ({"U": [[1], ["a"]]}, "U[1][0]"),
        ({"forms": ["x +* y"], "variables": ["x", "y"]}, "forms[0]"),
        ({"U": [[1]], "c": 5}, "c"),
        ({"field": "R", "U": [[1], [1]]}, "field"),
    ],
)
def test_input_errors(cli, doc, needle):
    code, _, err = cli(["rees", "dual"], doc)
    assert code == 2
    assert needle in err


def test_resource_exit(cli, monkeypatch):
    monkeypatch.setenv("STARREES_GB_MAX_BASIS", "1")
    code, _, err = cli(["rees", "primary"], WORKED)
    assert code == 3 and err


def test_taylor_equations(cli):
    code, out, _ = cli(["taylor", "equations", "--t", "4", "--c", "3", "--m", "1", "--format", "json"])
    data = json.loads(out)
    assert code == 0 and len(data["quadrics"]) == 3


def test_verify_unknown_suite(cli):
    assert cli(["verify", "--suite", "nope"])[0] == 2


def test_verify_suite(cli):
    code, out, _ = cli(["verify", "--suite", "recursion"])
    assert code == 0 and "recursion" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "starrees", "rees", "equations"],
        input=json.dumps(WORKED),
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and "fiber generators (4)" in proc.stdout


U_docs = st.integers(2, 4).flatmap(
    lambda n: st.integers(1, 2).flatmap(
        lambda r: st.lists(st.lists(st.integers(1, 4), min_size=r, max_size=r), min_size=n, max_size=n)
    )
)


@settings(max_examples=20, deadline=None)
@given(U_docs)
def test_json_output_is_deterministic_and_round_trips(U):
    import contextlib

    doc = json.dumps({"field": "Fp:101", "U": U, "c": 2})

    def once(text):
        buf = io.StringIO()
        old = sys.stdin
        sys.stdin = io.StringIO(text)
        try:
            with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
                code = main(["rees", "equations", "--format", "json"])
        finally:
            sys.stdin = old
        return code, buf.getvalue()

    code1, out1 = once(doc)
    code2, out2 = once(doc)
    assert (code1, out1) == (code2, out2)
    if code1 == 0:
        data = json.loads(out1)
        echoed = json.dumps({"field": data["field"], "U": data["U"], "c": data["c"]})
        assert once(echoed)[1] == out1
