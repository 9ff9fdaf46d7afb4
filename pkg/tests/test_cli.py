"""Command-line interface: exit codes, report rendering, and byte stability."""

import json
import shutil
import subprocess
import sys

import numpy as np
import pytest

from hhone.cli import main as cli_main
from hhone.report import full_verification, grid_points, to_json, to_text

ALWAYS_FAILING = {
    "lemma5.4.iii",
    "thm1.1.vi.jz_l_equals_lprime",
    "thm1.1.vii.center_dim",
}
BOUNDARY_FAILING = ALWAYS_FAILING | {
    "thm1.1.v.socle_in_center_lprime",
    "thm1.1.vii.abelian_iff",
}


def run_cli(capsys, argv):
    code = cli_main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# verify

def test_verify_boundary_point_exits_one_with_pinned_failures(capsys):
    code, out, err = run_cli(capsys, ["verify", "--p", "3", "--e", "2"])
    assert code == 1
    assert out.startswith("instance: qci(p=3, e=2, q=2)\n")
    failed = {line.split()[1] for line in out.splitlines() if line.startswith("FAIL")}
    assert failed == BOUNDARY_FAILING
    assert "PASS thm1.1.i.dim" in out
    assert "expected 8  computed 8" in out
    assert "48 passed, 5 failed of 53 checks" in out


def test_verify_interior_point_fails_only_always_on_deviations(capsys, tmp_path):
    path = tmp_path / "v.json"
    code, out, _ = run_cli(
        capsys, ["verify", "--p", "5", "--e", "2", "--json", str(path)])
    assert code == 1
    doc = json.loads(path.read_text(encoding="utf-8"))
    failed = {r["id"] for r in doc["checks"] if not r["pass"]}
    assert failed == ALWAYS_FAILING
    corrected = {r["id"] for r in doc["checks"] if r["id"].endswith(".corrected")}
    assert {r["pass"] for r in doc["checks"] if r["id"] in corrected} == {True}


def test_verify_json_document_shape(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, ["verify", "--p", "3", "--e", "2", "--json", str(path)])
    assert code == 1
    raw = path.read_text(encoding="utf-8")
    assert raw.endswith("\n")
    doc = json.loads(raw)
    assert sorted(doc) == ["checks", "e", "name", "p", "q"]
    assert (doc["p"], doc["e"], doc["q"]) == (3, 2, 2)
    for rec in doc["checks"]:
        assert {"id", "claim", "expected", "computed", "pass"} <= set(rec)
        assert isinstance(rec["pass"], bool)
        assert isinstance(rec["claim"], str) and rec["claim"]


def test_verify_output_is_byte_stable(capsys, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    _, out1, _ = run_cli(
        capsys, ["verify", "--p", "5", "--e", "4", "--json", str(first)])
    _, out2, _ = run_cli(
        capsys, ["verify", "--p", "5", "--e", "4", "--json", str(second)])
    assert out1 == out2
    assert first.read_bytes() == second.read_bytes()


def test_verify_accepts_explicit_q(capsys):
    code, out, _ = run_cli(capsys, ["verify", "--p", "5", "--e", "4", "--q", "3"])
    assert code == 1
    assert out.startswith("instance: qci(p=5, e=4, q=3)\n")


def test_verify_rejects_q_of_wrong_order(capsys):
    code, _, err = run_cli(capsys, ["verify", "--p", "5", "--e", "2", "--q", "2"])
    assert code == 2
    assert err.startswith("error:")


def test_verify_rejects_bad_e(capsys):
    code, _, err = run_cli(capsys, ["verify", "--p", "7", "--e", "4"])
    assert code == 2
    assert "e must divide p-1" in err


@pytest.mark.parametrize("e", [1, 0, -2])
def test_verify_rejects_e_below_two(capsys, e):
    code, _, err = run_cli(capsys, ["verify", "--p", "7", "--e", str(e)])
    assert code == 2
    assert "e must divide p-1" in err


def test_verify_rejects_nonprime_p(capsys):
    code, _, err = run_cli(capsys, ["verify", "--p", "4", "--e", "3"])
    assert code == 2
    assert "odd prime" in err


def test_verify_enforces_default_cap(capsys):
    code, _, err = run_cli(capsys, ["verify", "--p", "17", "--e", "2"])
    assert code == 2
    assert "exceeds the cap 13" in err
    assert "--allow-large" in err


def test_cap_stays_at_31_even_with_allow_large(capsys):
    code, _, err = run_cli(
        capsys, ["verify", "--p", "37", "--e", "2", "--allow-large"])
    assert code == 2
    assert "exceeds the cap 31" in err


# ---------------------------------------------------------------------------
# scan

def test_scan_small_grid(capsys):
    code, out, _ = run_cli(capsys, ["scan", "--p-max", "7"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "6 grid points up to p = 7"
    rows = [line.split() for line in lines[1:7]]
    assert [(r[0], r[1]) for r in rows] == [
        ("3", "2"), ("5", "2"), ("5", "4"), ("7", "2"), ("7", "3"), ("7", "6")]
    by_pe = {(r[0], r[1]): r for r in rows}
    # columns: p e q hh1 L' Z(L') socle brandt<= socle<= abelian
    assert by_pe[("7", "2")][7:9] == ["20", "4"]
    assert by_pe[("5", "4")][5] == "6"
    assert all(r[9] == "false" for r in rows)


def test_scan_is_byte_stable(capsys, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    _, out1, _ = run_cli(capsys, ["scan", "--p-max", "7", "--json", str(first)])
    _, out2, _ = run_cli(capsys, ["scan", "--p-max", "7", "--json", str(second)])
    assert out1 == out2
    assert first.read_bytes() == second.read_bytes()
    doc = json.loads(first.read_text(encoding="utf-8"))
    assert doc["p_max"] == 7
    assert len(doc["grid"]) == 6
    assert doc["grid"][0] == {
        "p": 3, "e": 2, "q": 2, "dim_hh1": 8, "dim_lprime": 6,
        "dim_center_lprime": 2, "dim_socle": 4, "brandt_bound": 4,
        "socle_bound": 4, "lprime_abelian": False,
    }


def test_scan_enforces_cap(capsys):
    code, _, err = run_cli(capsys, ["scan", "--p-max", "17"])
    assert code == 2
    assert "p-max=17 exceeds the cap 13" in err


# ---------------------------------------------------------------------------
# lift

def test_lift_small_prime(capsys, tmp_path):
    path = tmp_path / "lift.json"
    code, out, _ = run_cli(capsys, ["lift", "--p", "3", "--json", str(path)])
    assert code == 0
    assert "f_3 = u^3 - 3*u  coefficients [0, -3, 0, 1]" in out
    assert "18 passed, 0 failed of 18 checks" in out
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert doc["f_p"] == [0, -3, 0, 1]
    assert doc["commutator_rank"] == 3
    assert doc["commutator_pure"] is True
    assert doc["quotient_rank"] == 5
    assert doc["mod_p_quotient_not_symmetric"] is True


def test_lift_rejects_nonprime(capsys):
    code, _, err = run_cli(capsys, ["lift", "--p", "4"])
    assert code == 2
    assert err.startswith("error:")


def test_lift_rejects_large_prime(capsys):
    code, _, err = run_cli(capsys, ["lift", "--p", "17"])
    assert code == 2
    assert err.startswith("error:")


# ---------------------------------------------------------------------------
# bench

def test_bench_backends_agree(capsys):
    code, out, _ = run_cli(
        capsys, ["bench", "--sizes", "16", "32", "--repeats", "1"])
    assert code == 0
    lines = out.strip().splitlines()
    header = lines[0].split()
    assert header[0] == "shape" and header[-1] == "agree"
    body = [line for line in lines[1:] if line.strip()]
    assert body and all(line.split()[-1] == "yes" for line in body)


# ---------------------------------------------------------------------------
# rendering helpers

def test_to_json_coerces_numpy_scalars():
    doc = {"a": np.int64(3), "b": np.bool_(True), "c": np.float64(1.5)}
    raw = to_json(doc)
    assert json.loads(raw) == {"a": 3, "b": True, "c": 1.5}
    assert raw.endswith("\n")


def test_to_json_sorts_keys():
    assert to_json({"b": 1, "a": 2}) == to_json(dict([("a", 2), ("b", 1)]))


def test_to_text_renders_notes_indented():
    report = {
        "p": 3, "e": 2, "q": 2, "name": "qci(p=3, e=2, q=2)",
        "checks": [
            {"id": "x.one", "claim": "c", "expected": 1, "computed": 1,
             "pass": True},
            {"id": "x.two", "claim": "c", "expected": True, "computed": False,
             "pass": False, "note": "why it differs"},
        ],
    }
    text = to_text(report)
    assert "PASS x.one" in text
    assert "FAIL x.two" in text and "expected true  computed false" in text
    assert "note: why it differs" in text
    assert "1 passed, 1 failed of 2 checks" in text


def test_grid_points_enumeration():
    assert grid_points(7) == [(3, 2), (5, 2), (5, 4), (7, 2), (7, 3), (7, 6)]
    assert len(grid_points(13)) == 14
    assert grid_points(2) == []


def test_full_verification_record_count_matches_cli():
    report = full_verification(3, 2)
    assert len(report["checks"]) == 53
    assert report["name"] == "qci(p=3, e=2, q=2)"


# ---------------------------------------------------------------------------
# module and console entry points

def test_python_dash_m_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hhone", "verify", "--p", "7", "--e", "4"],
        capture_output=True, text=True)
    assert proc.returncode == 2
    assert "e must divide p-1" in proc.stderr


@pytest.mark.skipif(shutil.which("hhone") is None, reason="script not installed")
def test_console_script_entry_point():
    proc = subprocess.run(
        ["hhone", "scan", "--p-max", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "1 grid points up to p = 3" in proc.stdout
