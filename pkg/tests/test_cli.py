from __future__ import annotations

import json
import re
import subprocess
import sys

import pytest

from symdeg.cli import EXIT_MISMATCH, EXIT_OK, EXIT_UNDECIDED, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_orbits_counts(capsys):
    code, out, _ = run(capsys, "orbits", "--n", "2")
    assert code == EXIT_OK and len(json.loads(out)) == 3
    code, out, _ = run(capsys, "orbits", "--n", "3")
    assert len(json.loads(out)) == 7


def test_orbits_symmetric_with_omitted(capsys):
    code, out, _ = run(capsys, "orbits", "--n", "4", "--epsilon", "+1", "--omitted")
    data = json.loads(out)
    assert code == EXIT_OK and len(data["orbits"]) == 5 and "1->4" in data["omitted"]


def test_closure_dot_n2(capsys):
    code, out, _ = run(capsys, "closure", "--n", "2", "--format", "dot")
    lines = out.splitlines()
    assert code == EXIT_OK
    assert sum(1 for line in lines if "[label=" in line) == 3
    assert sum(1 for line in lines if re.fullmatch(r"\s*o\d+ -> o\d+;", line)) == 2


def test_closure_undecided_exit_code(capsys):
    code, _, err = run(capsys, "closure", "--n", "4", "--epsilon", "+1", "--format", "text")
    assert code == EXIT_UNDECIDED and "undecided" in err
    code, _, _ = run(capsys, "closure", "--n", "4", "--epsilon", "+1", "--allow-undecided")
    assert code == EXIT_OK


def test_induced_expect_violation(capsys):
    code, out, _ = run(capsys, "induced", "--n", "4", "--epsilon", "+1", "--expect-violation")
    assert code == EXIT_OK and "violation\t1->3,2->4 -> 1->2,3->4" in out
    code, _, _ = run(capsys, "induced", "--n", "4", "--epsilon", "+1")
    assert code == EXIT_MISMATCH


def test_induced_positive_case(capsys):
    code, out, _ = run(capsys, "induced", "--n", "4", "--epsilon", "-1", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["induced"] and data["violations"] == []
    code, _, _ = run(capsys, "induced", "--n", "4", "--epsilon", "-1", "--expect-violation")
    assert code == EXIT_MISMATCH


def test_counterexample(capsys):
    code, out, _ = run(capsys, "counterexample", "--l", "2")
    data = json.loads(out)
    assert code == EXIT_OK and data["verdict"] == "NOT_INDUCED"
    assert data["type_D"]["dim_orbit_M"] == data["type_D"]["dim_orbit_N"] == 2


def test_tables(capsys):
    code, out, _ = run(capsys, "tables", "--l-max", "4", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["ok"]
    assert data["rows"][0]["quiver"]["dim_G"] == 26


def test_weyl(capsys):
    code, out, _ = run(capsys, "weyl", "--l", "4", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and (data["length_M"], data["length_N"]) == (36, 34)


def test_seesaw(capsys):
    code, out, _ = run(capsys, "seesaw", "--l", "2", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["hom_order"] == {"M<=N": True, "N<=M": False}
    code, out, _ = run(capsys, "seesaw", "--l", "2", "--format", "dot")
    assert out.count("digraph") == 2


def test_bad_parameters(capsys):
    code, _, err = run(capsys, "orbits", "--n", "3", "--epsilon", "-1")
    assert code == EXIT_USAGE and "symplectic" in err
    with pytest.raises(SystemExit) as exc:
        main(["orbits", "--n", "3", "--epsilon", "2"])
    assert exc.value.code == EXIT_USAGE


def test_deterministic_output(capsys):
    _, a, _ = run(capsys, "closure", "--n", "4", "--epsilon", "-1", "--format", "json")
    _, b, _ = run(capsys, "closure", "--n", "4", "--epsilon", "-1", "--format", "json")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symdeg", "weyl", "--l", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "length 36" in proc.stdout
