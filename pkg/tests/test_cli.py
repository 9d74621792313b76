"""End-to-end tests of the command line interface, driven through main() so
the exit codes and the exact stdout/stderr formatting are both covered."""

from pathlib import Path

import pytest

from bottlab import cli, table
from bottlab.verify import parse_report

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -------------------------------------------------------------------- list

def test_list_names_every_map_with_signature(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert "eta_cross S5->SU(3)" in out or "eta_cross S5→SU(3)" in out
    assert "phi.n=3 S6→SU(3)" in out or "phi.n=3 S6->SU(3)" in out
    assert "zeta4 S7→SU(8)" in out or "zeta4 S7->SU(8)" in out
    assert len(out.splitlines()) == 24


# -------------------------------------------------------------------- eval

def test_eval_eta_cross_at_basis_point(capsys):
    code, out, err = run(capsys, "eval", "eta_cross", "1,0,0,0,0,0")
    assert code == 0 and err == ""
    assert out.splitlines() == [
        "1+0j 0+0j 0+0j",
        "0+0j 0+0j -1+0j",
        "0+0j 1+0j 0+0j",
    ]


def test_eval_zeta2_at_base_point(capsys):
    code, out, _ = run(capsys, "eval", "zeta2", "1,0,0,0")
    assert code == 0
    assert out.splitlines() == ["1+0j 0+0j", "0+0j 1+0j"]


def test_eval_phi_n2_at_south_pole(capsys):
    code, out, _ = run(capsys, "eval", "phi.n=2", "-1,0,0,0,0")
    assert code == 0
    assert out.splitlines() == ["1+0j 0+0j", "0+0j 1+0j"]


def test_eval_renormalizes_with_notice(capsys):
    code, out, err = run(capsys, "eval", "zeta2", "3,0,0,0")
    assert code == 0
    assert "note: renormalized input (3 -> 1)" in err
    assert out.splitlines()[0] == "1+0j 0+0j"


def test_eval_usage_errors(capsys):
    for argv in (
        ("eval", "no_such_map", "1,0"),
        ("eval", "zeta2", "1,0,0"),  # wrong dimension
        ("eval", "zeta2", "0,0,0,0"),  # zero vector
        ("eval", "zeta2", "1,0,0,zebra"),
    ):
        code, _, err = run(capsys, *argv)
        assert code == 64
        assert "error" in err


# ------------------------------------------------------------------ degree

def test_degree_zeta2_all_columns_certifies(capsys):
    code, out, _ = run(capsys, "degree", "zeta2", "--samples", "20000")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2
    for j, line in enumerate(lines, start=1):
        assert line.startswith(f"zeta2 column {j}: degree 1 (certified)")
        assert "raw" in line and "stderr" in line and "samples 20000" in line


def test_degree_underpowered_run_exits_uncertified(capsys):
    code, out, _ = run(
        capsys, "degree", "eta4", "--column", "1", "--samples", "10000"
    )
    assert code == 2
    assert "(uncertified)" in out


def test_degree_usage_errors(capsys):
    code, _, err = run(capsys, "degree", "phi.n=2", "--samples", "10000")
    assert code == 64 and "not self-maps" in err
    code, _, err = run(capsys, "degree", "zeta2", "--column", "5")
    assert code == 64
    code, _, err = run(capsys, "degree", "zeta2", "--column", "zero")
    assert code == 64


# ------------------------------------------------------------------ verify

def test_verify_stable_passes_quickly(capsys):
    code, out, _ = run(capsys, "verify", "stable", "--samples", "300")
    assert code == 0
    assert out.startswith("bottlab-report/1\n")
    assert "overall: PASS" in out


def test_verify_degrees_small_budget_is_inconclusive(capsys):
    code, out, _ = run(capsys, "verify", "degrees", "--samples", "1000", "--seed", "1")
    assert code == 3
    assert "overall: INCONCLUSIVE" in out


def test_verify_out_writes_parseable_report(tmp_path, capsys):
    dest = tmp_path / "report.txt"
    code, out, _ = run(
        capsys, "verify", "eta-cross", "--samples", "300", "--out", str(dest)
    )
    assert code == 0
    assert out == f"eta-cross: PASS (5 checks) -> {dest}\n"
    report = parse_report(dest.read_text())
    assert report.suite == "eta-cross" and report.overall == "PASS"


def test_verify_forwards_tolerances(capsys):
    code, out, _ = run(
        capsys,
        "verify", "stable", "--samples", "100", "--tol", "zeta-unitarity=1e-30",
    )
    assert code == 1
    assert "overall: FAIL" in out


def test_verify_usage_errors(capsys):
    code, _, err = run(capsys, "verify", "no-such-suite")
    assert code == 64 and "error" in err
    code, _, err = run(capsys, "verify", "stable", "--tol", "zeta-unitarity")
    assert code == 64
    code, _, err = run(capsys, "verify", "phi-psi", "--n", "junk")
    assert code == 64


# ------------------------------------------------------------------- table

def test_table_data_matches_frozen_fixture(capsys):
    code, out, _ = run(capsys, "table", "--format", "data")
    assert code == 0
    assert out == (DATA / "table.golden").read_text()
    assert out == table.render_data()


def test_table_pretty_contains_legend(capsys):
    code, out, _ = run(capsys, "table")
    assert code == 0
    assert "nonstable (r >= 2n)" in out
    assert "homotopic to its transpose" in out


# ------------------------------------------------------------------ global

def test_help_exits_cleanly(capsys):
    assert cli.main(["--help"]) == 0
    capsys.readouterr()
    assert cli.main(["degree", "--help"]) == 0
    capsys.readouterr()
    assert cli.main(["--version"]) == 0
    assert capsys.readouterr().out.startswith("bottlab ")


def test_missing_arguments_are_usage_errors(capsys):
    assert cli.main([]) == 64
    capsys.readouterr()
    assert cli.main(["eval", "zeta2"]) == 64
    capsys.readouterr()
    assert cli.main(["frobnicate"]) == 64
    capsys.readouterr()
