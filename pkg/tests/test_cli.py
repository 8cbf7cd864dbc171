import json
from importlib import resources

import pytest

from abelian_cover_lab.cli import EXIT_USAGE, UsageError, main, parse_sweep
from abelian_cover_lab.exact import CycNum, omega_power


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--output", "json", "--mask-timings")
    return code, json.loads(out), out


def test_branch_generic_point(capsys):
    code, rep, _ = run_json(capsys, "branch", "--a", "1", "--c", "2")
    assert code == 0
    assert rep["schema_version"] == 1 and rep["timings"] is None
    br = rep["results"]["branch"]
    assert br["multiplicity"] == 1 and br["matches_reference"]
    assert rep["results"]["cusps"]["ordinary_cusps"] == 9
    assert rep["results"]["cusps"]["cubics_through_cusps"] == 1
    assert rep["results"]["local_model_smooth"] is True


def test_branch_origin(capsys):
    code, rep, _ = run_json(capsys, "branch", "--a", "0", "--c", "1")
    assert code == 0
    br = rep["results"]["branch"]
    assert br["sextic"] == "X^2*Y^2*Z^2"
    assert br["multiplicity"] == 2 and br["reduced_projective"] == "X*Y*Z"


def test_branch_t1_is_skipped(capsys):
    code, rep, _ = run_json(capsys, "branch", "--a", "1", "--c", "1")
    assert code == 0
    assert rep["results"]["in_T1"] is True
    assert rep["results"]["singular_locus_dim"] == 1
    assert rep["results"]["branch"]["status"].startswith("skipped")


def test_branch_with_zeta(capsys):
    code, rep, _ = run_json(capsys, "branch", "--a=-2*zeta", "--c", "1")
    assert code == 0
    assert rep["results"]["in_T2"] is True
    assert rep["results"]["branch"]["multiplicity"] == 2


def test_branch_translation(capsys):
    code, rep, _ = run_json(capsys, "branch", "--a", "1", "--c", "2", "--translation", "1")
    assert code == 0
    assert rep["inputs"]["translation"] == "1"
    assert "eliminant_translated" in rep["results"]["branch"]


def test_text_output(capsys):
    code, out = run(capsys, "branch", "--a", "1", "--c", "2")
    assert code == 0
    assert "status: pass" in out and "multiplicity: 1" in out


def test_budget_exhaustion_is_a_computation_failure(capsys):
    code, rep, _ = run_json(capsys, "branch", "--a", "1", "--c", "2", "--step-budget", "5")
    assert code == 2
    assert rep["status"] == "computation_failure"
    assert "ResourceLimitExceeded" in rep["results"]["error"]


@pytest.mark.parametrize("argv", [
    ["branch", "--a", "1"],
    ["branch", "--a", "0", "--c", "0"],
    ["branch", "--a", "1/0", "--c", "1"],
    ["branch", "--a", "q", "--c", "1"],
    ["branch", "--a", "1", "--c", "2", "--step-budget", "0"],
    ["verify", "--only", "nonsense"],
    ["frobnicate"],
    [],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == EXIT_USAGE


def test_json_is_deterministic(capsys):
    _, _, first = run_json(capsys, "branch", "--a", "2", "--c", "1")
    _, _, second = run_json(capsys, "branch", "--a", "2", "--c", "1")
    assert first == second


def test_parse_sweep():
    pts = parse_sweep("# header\n1, 2\n(2,1)\n\n zeta 3  # trailing\n")
    assert pts == [(CycNum(1), CycNum(2)), (CycNum(2), CycNum(1)), (omega_power(1), CycNum(3))]
    with pytest.raises(UsageError):
        parse_sweep("1 2 3\n")


def test_empty_sweep_is_usage_error(tmp_path, capsys):
    f = tmp_path / "empty.txt"
    f.write_text("# nothing\n")
    assert main(["branch", "--sweep", str(f)]) == EXIT_USAGE
    assert main(["branch", "--sweep", str(tmp_path / "missing.txt")]) == EXIT_USAGE


def test_sweep_rows_and_worker_independence(tmp_path, capsys):
    f = tmp_path / "pts.txt"
    f.write_text("1, 2\n2, 1\n1, 3\n")
    code, serial, serial_text = run_json(capsys, "branch", "--sweep", str(f), "--workers", "1")
    assert code == 0
    rows = serial["results"]["rows"]
    assert [(r["a"], r["c"]) for r in rows] == [("1", "2"), ("2", "1"), ("1", "3")]
    assert all(r["matches_reference"] and r["multiplicity"] == 1 for r in rows)
    _, _, parallel_text = run_json(capsys, "branch", "--sweep", str(f), "--workers", "3")
    assert parallel_text == serial_text


def test_sweep_of_rational_t2(tmp_path, capsys):
    f = tmp_path / "t2.txt"
    f.write_text("-2, 1\n0, 1\n")
    code, rep, _ = run_json(capsys, "branch", "--sweep", str(f))
    assert code == 0
    assert [r["multiplicity"] for r in rep["results"]["rows"]] == [2, 2]


def test_sweep_isolates_failures(tmp_path, capsys):
    f = tmp_path / "pts.txt"
    f.write_text("1, 2\n")
    code, rep, _ = run_json(capsys, "branch", "--sweep", str(f), "--step-budget", "5")
    assert code == 2
    assert rep["results"]["rows"][0]["error"]


def test_verify_lattice(capsys):
    code, rep, _ = run_json(capsys, "verify", "--only", "lattice")
    assert code == 0
    obs = {c["name"]: c["observed"] for c in rep["results"]["checks"]}
    assert obs == {"lattice_index": "3", "lattice_type": "(1, 3)", "kernel_invariants": "[3, 3]"}


def test_verify_only_accepts_lists(capsys):
    code, rep, _ = run_json(capsys, "verify", "--only", "lattice,invariants", "--only", "bidouble")
    assert code == 0
    assert rep["inputs"]["suites"] == ["lattice", "invariants", "bidouble"]


@pytest.mark.parametrize("cmd", ["lattice", "invariants"])
def test_named_commands(capsys, cmd):
    code, rep, _ = run_json(capsys, cmd)
    assert code == 0 and rep["command"] == cmd


def test_eigenspaces_command_reports_failure(capsys):
    code, rep, _ = run_json(capsys, "eigenspaces")
    assert code == 1
    assert rep["results"]["failed"] == ["eigenspace_dims"]


def test_corrupted_fixture_is_named(tmp_path, capsys):
    good = resources.files("abelian_cover_lab.data").joinpath("heisenberg_fixtures.txt").read_text()
    _, rep, _ = run_json(capsys, "verify", "--only", "heisenberg")
    name = "fixture_membership_last_factor_YZ_swapped[v1]"
    assert name not in rep["results"]["failed"]

    bad = good.replace("v1 YY^YZ = Y", "v1 YY^YZ = 2*Y")
    assert bad != good
    f = tmp_path / "bad.txt"
    f.write_text(bad)
    code, rep, _ = run_json(capsys, "verify", "--only", "heisenberg", "--fixtures", str(f))
    assert code == 1
    assert name in rep["results"]["failed"]
    assert "fixture_membership_last_factor_YZ_swapped[v2]" not in rep["results"]["failed"]
    assert rep["inputs"]["fixtures"] == "custom"


def test_unreadable_fixture_file(tmp_path, capsys):
    assert main(["verify", "--fixtures", str(tmp_path / "nope.txt")]) == EXIT_USAGE


def test_malformed_fixture_is_recorded(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("v1 XX^XY = Z\n")
    code, rep, _ = run_json(capsys, "verify", "--only", "heisenberg", "--fixtures", str(f))
    assert code == 1
    assert rep["results"]["failed"] == ["heisenberg"]
