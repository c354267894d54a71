"""Golden tests for the command-line exit codes and JSON documents."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from expzero import catalog
from expzero.cli import main

INPUTS = Path(__file__).resolve().parents[1] / "demos" / "inputs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.strip() else None
    return code, doc, out.err


@pytest.mark.parametrize("name,case,code", [
    ("surface_nz.json", "d1", 0),
    ("surface_ex.json", "d32", 0),
    ("surface_fermat.json", "c", 0),
    ("surface_d31.json", "d31", 0),
    ("surface_unsupported.json", "unsupported", 3),
    ("surface_heuristic.json", "d2", 4),
])
def test_classify_exit_codes(capsys, name, case, code):
    got, doc, _ = run(capsys, "classify", "--input", INPUTS / name)
    assert got == code
    assert doc["case"] == case
    assert set(doc) == {"case", "verdict", "witness", "heuristic_flags"}


def test_classify_nz_verdict(capsys):
    _, doc, _ = run(capsys, "classify", "--example", "NZ")
    assert doc["verdict"] == "empty" and doc["heuristic_flags"] == []


def test_classify_ex_witness(capsys):
    _, doc, _ = run(capsys, "classify", "--input", INPUTS / "surface_ex.json")
    from expzero.checks import expected_exx
    got = json.dumps(doc["witness"]["backsub"]["G"], sort_keys=True, separators=(",", ":"))
    assert got == expected_exx().dumps()


def test_malformed_input_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "classify", "--input", bad)[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"kind": "curve_pair"}))
    assert run(capsys, "classify", "--input", wrong)[0] == 2
    assert run(capsys, "classify", "--input", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "solve", "--example", "a", "--region", "disc", "0", "0")[0] == 2
    assert run(capsys, "solve", "--example", "a", "--region", "annulus", "0", "0", "1", "2", "--tol", "-1")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["solve", "--seed", "zz"])
    assert info.value.code == 2


def test_solve_region_with_excluded_point_exits_2(capsys):
    code, _, err = run(capsys, "solve", "--input", INPUTS / "phi_a.json", "--region", "disc", "0", "0", "2")
    assert code == 2 and "excluded" in err


def test_solve_unit_annulus(capsys):
    code, doc, _ = run(capsys, "solve", "--input", INPUTS / "phi_a.json", "--region", "annulus", "0", "0", "0.9", "1.1")
    assert code == 0 and doc["count"] == 2 and doc["isolated"] == 2
    roots = [complex(r["re"], r["im"]) for c in doc["certificates"] for r in c["roots"]]
    for target in (catalog.UNIT_CIRCLE_ZERO, catalog.UNIT_CIRCLE_ZERO.conjugate()):
        assert min(abs(z - target) for z in roots) < 1e-9
    for c in doc["certificates"]:
        assert set(c) >= {"box", "winding", "roots", "status"}
        assert set(c["roots"][0]) == {"re", "im", "residual", "iters"}


def test_solve_exx_disc(capsys):
    code, doc, _ = run(capsys, "solve", "--input", INPUTS / "phi_exx.json", "--region", "disc", "0", "0", "20")
    assert code == 0 and doc["isolated"] >= 1
    assert all(r["residual"] < 1e-9 for c in doc["certificates"] if c["status"] == "isolated" for r in c["roots"])


def test_solve_b_near_good_seed(capsys):
    s = catalog.PHI_B_SEED_GOOD
    code, doc, _ = run(capsys, "solve", "--example", "b", "--region", "disc", s.real, s.imag, "1")
    assert code == 0
    roots = [complex(r["re"], r["im"]) for c in doc["certificates"] for r in c["roots"]]
    assert min(abs(z - s) for z in roots) < 0.1


def test_solve_b_large_disc_with_cap(capsys):
    code, doc, _ = run(capsys, "solve", "--example", "b", "--region", "disc", "0", "0", "30", "--max-zeros", "2")
    assert code == 0 and doc["count"] == 576 and doc["isolated"] == 2


def test_solve_with_nothing_to_isolate_exits_1(capsys):
    code, doc, _ = run(capsys, "solve", "--example", "exp_minus_z", "--region", "disc", "0", "0", "1")
    assert code == 1 and doc["count"] == 0


def test_output_is_deterministic(capsys, tmp_path):
    args = ["solve", "--input", INPUTS / "phi_exx.json", "--region", "rect", "-5", "-9", "5", "9"]
    run(capsys, *args, "--output", tmp_path / "one.json")
    run(capsys, *args, "--output", tmp_path / "two.json", "--set", "threads=4")
    assert (tmp_path / "one.json").read_bytes() == (tmp_path / "two.json").read_bytes()


def test_seed_changes_nothing_on_clean_contours(capsys):
    base = run(capsys, "solve", "--example", "a", "--region", "annulus", "0", "0", "7", "8")[1]
    other = run(capsys, "solve", "--example", "a", "--region", "annulus", "0", "0", "7", "8", "--seed", "BEEF")[1]
    assert base == other


def test_emit_svg(capsys, tmp_path):
    svg = tmp_path / "zeros.svg"
    code, _, _ = run(capsys, "solve", "--example", "a", "--region", "annulus", "0", "0", "0.5", "2",
                     "--emit-svg", svg)
    text = svg.read_text()
    assert code == 0 and text.startswith("<svg") and text.count("<circle") == 2
    wsvg = tmp_path / "winding.svg"
    run(capsys, "winding", "--example", "a", "--region", "disc", "0", "0", "2", "--emit-svg", wsvg)
    assert "stroke=\"blue\"" in wsvg.read_text()  # the excluded point at 0


def test_winding_command(capsys):
    code, doc, _ = run(capsys, "winding", "--example", "a", "--region", "disc", "0", "0", "2")
    assert code == 0 and doc["winding"] == 1
    code, doc, _ = run(capsys, "winding", "--example", "a", "--region", "disc", "0", "0", "1")
    assert code == 1 and doc["error"] == "ZeroOnContour"


def test_laurent_command(capsys):
    code, doc, _ = run(capsys, "laurent", "--example", "exp_minus_z", "--region", "disc", "0", "0", "0.5", "--K", "6")
    assert code == 0 and doc["m"] == 0
    assert abs(complex(*doc["coeffs"]["2"]) - 0.5) < 1e-8
    assert doc["bound_report"]["aest_at_17"] < 0.5
    code, doc, _ = run(capsys, "laurent", "--example", "a", "--region", "disc", "0", "0", "1")
    assert code == 1 and doc["error"] == "ZerosInAnnulus"
    assert run(capsys, "laurent", "--example", "a", "--region", "rect", "0", "0", "1", "1")[0] == 2


def test_set_overrides(capsys):
    code, doc, _ = run(capsys, "solve", "--example", "b", "--region", "disc", "0", "0", "12", "--set", "cell_cap=30")
    assert code in (0, 1) and "budget_exceeded" in doc
    with pytest.raises(SystemExit):
        main(["solve", "--example", "b", "--set", "nonsense=3"])


def test_elliptic_verify(capsys):
    code, doc, _ = run(capsys, "elliptic-verify")
    assert code == 0 and doc["all_passed"]
    code, doc, _ = run(capsys, "elliptic-verify", "--omega1", "1", "0.2", "--omega2", "5.3", "2.9")
    assert code == 0
    assert run(capsys, "elliptic-verify", "--omega1", "1", "0", "--omega2", "2", "0")[0] == 2
    assert run(capsys, "elliptic-verify", "--tol", "1e-30")[0] == 1


def test_verify_paper_only(capsys):
    code, doc, err = run(capsys, "verify-paper", "--only", "winding")
    assert code == 0 and [c["name"] for c in doc["criteria"]] == ["winding"]
    assert "PASS winding" in err


def test_verify_paper_absurd_tolerance(capsys):
    code, doc, err = run(capsys, "verify-paper", "--only", "winding", "--only", "unit_circle_zeros", "--tol", "1e-30")
    assert code == 1 and not doc["all_passed"]
    assert "FAIL" in err


def test_verify_paper_full_run(capsys):
    code, doc, _ = run(capsys, "verify-paper")
    assert code == 0 and doc["all_passed"] and len(doc["criteria"]) == 10
    again = run(capsys, "verify-paper")[1]
    assert json.dumps(doc, sort_keys=True) == json.dumps(again, sort_keys=True)


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "expzero.cli", "classify", "--example", "NZ"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0 and json.loads(out.stdout)["case"] == "d1"
