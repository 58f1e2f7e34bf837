from __future__ import annotations

import json
import subprocess
import sys

from grestrict.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verdict_dihedral(capsys):
    code, out, _ = run(capsys, "verdict", "(1 2 3 4 5);(2 5)(3 4)")
    assert code == 0
    assert out.startswith("Restrictive, c = 16")
    assert "[sylow-order-p] p=2: fired, c=16" in out


def test_verdict_json_by_label(capsys):
    code, out, _ = run(capsys, "verdict", "4T3", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["overall"] == "NotRestrictive" and doc["witness"]


def test_props(capsys):
    code, out, _ = run(capsys, "props", "(1 2 3 4);(1 3)")
    assert code == 0 and "semiprimitive     False" in out


def test_witness_marks(capsys):
    code, out, _ = run(capsys, "witness", "(1 2 3 4);(1 3)", "--normal", "(1 3);(2 4)", "--m", "3")
    assert code == 0
    assert "|M| = 64" in out and out.count("[x]") == 6


def test_witness_with_ball(capsys):
    code, out, _ = run(capsys, "witness", "(1 2 3 4);(1 3)", "--normal", "(1 3);(2 4)", "--radius", "1")
    assert code == 0 and "kernel order 4" in out and out.count("[x]") == 7


def test_cosetgraph_formats(capsys):
    args = ["cosetgraph", "--group", "(1 2 3 4);(1 2)", "--subgroup", "(1 2 3);(1 2)", "--element", "(1 4)"]
    code, out, _ = run(capsys, *args)
    assert code == 0 and out.startswith("4 vertices, 6 edges, valency 3")
    code, out, _ = run(capsys, *args, "--format", "edges")
    assert code == 0 and len(out.splitlines()) == 6
    code, out, _ = run(capsys, *args, "--json")
    assert json.loads(out)["kernel_v_order"] == 1


def test_census_table(capsys):
    code, out, _ = run(capsys, "census", "--degrees", "2..4")
    assert code == 0
    assert any("4T3" in ln and "NotRestrictive" in ln for ln in out.splitlines())


def test_linear_quotient(capsys):
    code, out, _ = run(capsys, "linear-quotient", "--p", "3", "--det-index", "2", "--center", "2", "--json")
    doc = json.loads(out)
    assert code == 0 and (doc["degree"], doc["order"]) == (4, 24)


def test_input_errors(capsys):
    assert run(capsys, "verdict", "(1 2)(3 4)")[0] == 1  # intransitive
    assert run(capsys, "verdict", "99T1")[0] == 1
    assert run(capsys, "linear-quotient", "--p", "4")[0] == 1
    code, _, err = run(capsys, "cosetgraph", "--group", "(1 2 3 4);(1 3)", "--subgroup", "(1 3)(2 4)",
                       "--element", "(1 2 3 4)")
    assert code == 1 and "core-free" in err
    assert run(capsys, "census", "--degrees", "5..2")[0] == 1  # usage error
    assert run(capsys, "witness", "(1 2 3 4);(1 3)", "--normal", "(1 3);(2 4)", "--m", "2")[0] == 1


def test_resource_limit(capsys, monkeypatch):
    monkeypatch.setenv("GRESTRICT_MAX_ORDER", "100")
    code, _, err = run(capsys, "witness", "(1 2 3 4);(1 3)", "--normal", "(1 3);(2 4)", "--m", "3")
    assert code == 2 and "GRESTRICT_MAX_ORDER" in err


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "grestrict", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "0.1.0"
