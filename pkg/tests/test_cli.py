"""CLI: verbs, exit codes, certificates, determinism."""

import json
import subprocess
import sys
from pathlib import Path

from dfactor.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run_cli(args, capsys):
    code = main([str(a) for a in args])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_verify_fixture(capsys):
    code, report = run_cli(["verify", FIXTURES / "classical_xy.json"], capsys)
    assert code == 0
    assert report["verdict"] == "verified"
    assert report["result"]["maps"] == [[["x"]], [["y"]]]


def test_verify_false_exit_2(tmp_path, capsys):
    desc = json.loads((FIXTURES / "classical_xy.json").read_text())
    desc["maps"] = [[["x"]], [["x"]]]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(desc))
    code, report = run_cli(["verify", bad], capsys)
    assert code == 2
    assert report["verdict"] == "false"
    assert report["certificate"]["rotation"] == 1


def test_verify_parse_error_exit_1(tmp_path, capsys):
    bad = tmp_path / "broken.json"
    bad.write_text("{nope")
    code, report = run_cli(["verify", bad], capsys)
    assert code == 1
    assert "error" in report


def test_sum_suspend_roundtrip(tmp_path, capsys):
    code, rep = run_cli(
        ["sum", FIXTURES / "classical_xy.json", FIXTURES / "classical_xy.json"], capsys
    )
    assert code == 0 and rep["result"]["ranks"] == [2, 2]
    code, rep_s = run_cli(["suspend", FIXTURES / "classical_xy.json"], capsys)
    assert code == 0
    assert rep_s["result"]["maps"] == [[["6*y"]], [["6*x"]]]
    sus = tmp_path / "sus.json"
    sus.write_text(json.dumps(rep_s["result"]))
    code, rep_u = run_cli(["unsuspend", sus], capsys)
    assert code == 0
    assert rep_u["result"]["maps"] == [[["x"]], [["y"]]]
    assert "offsets" not in rep_u["result"]


def _morphism_file(tmp_path, name, components):
    fact = json.loads((FIXTURES / "classical_xy.json").read_text())
    desc = {
        "context": fact["context"],
        "d": 2,
        "source": {"ranks": fact["ranks"], "maps": fact["maps"]},
        "target": {"ranks": fact["ranks"], "maps": fact["maps"]},
        "components": components,
    }
    path = tmp_path / name
    path.write_text(json.dumps(desc))
    return path


def test_homotopic_verbs(tmp_path, capsys):
    ident = _morphism_file(tmp_path, "id.json", [[["1"]], [["1"]]])
    zero = _morphism_file(tmp_path, "zero.json", [[["0"]], [["0"]]])
    yy = _morphism_file(tmp_path, "yy.json", [[["y"]], [["y"]]])
    code, rep = run_cli(["homotopic", ident, zero], capsys)
    assert code == 2
    assert rep["verdict"] == "not_homotopic"
    assert rep["certificate"]["solver"]["kind"] == "module_groebner"
    code, rep = run_cli(["homotopic", yy, zero], capsys)
    assert code == 0
    assert rep["verdict"] == "homotopic"
    assert "witness" in rep


def test_cone_and_triangle(tmp_path, capsys):
    ident = _morphism_file(tmp_path, "id.json", [[["1"]], [["1"]]])
    code, rep = run_cli(["cone", ident], capsys)
    assert code == 0
    assert rep["result"]["cone"]["ranks"] == [2, 2]
    assert rep["result"]["cone"]["maps"][0] == [["6*y", "0"], ["1", "x"]]
    code, rep = run_cli(["triangle", ident], capsys)
    assert code == 0
    assert rep["result"]["z"]["ranks"] == [2, 2]


def test_cone_rejects_nonmorphism(tmp_path, capsys):
    bad = _morphism_file(tmp_path, "bad.json", [[["y"]], [["0"]]])
    code, rep = run_cli(["cone", bad], capsys)
    assert code == 2
    assert rep["certificate"]["failing_square"] == 1


def test_dg_verb(tmp_path, capsys):
    fact = json.loads((FIXTURES / "classical_xy.json").read_text())
    desc = {
        "context": fact["context"],
        "d": 2,
        "degree": 1,
        "source": {"ranks": fact["ranks"], "maps": fact["maps"]},
        "target": {"ranks": fact["ranks"], "maps": fact["maps"]},
        "components": [[["1"]], [["1"]]],
    }
    path = tmp_path / "gh.json"
    path.write_text(json.dumps(desc))
    code, rep = run_cli(["dg", path], capsys)
    assert code == 0
    assert rep["result"]["differential_squares_to_zero"] is True


def test_reduce_exact_checktac(tmp_path, capsys):
    code, rep = run_cli(
        ["reduce", FIXTURES / "classical_xy.json", "--f", "x*y"], capsys
    )
    assert code == 0
    window = rep["result"]
    assert window["nilpotency"] == 2
    assert window["period"] == 2
    wpath = tmp_path / "window.json"
    wpath.write_text(json.dumps(window))
    code, rep = run_cli(["exact", wpath], capsys)
    assert code == 0 and rep["verdict"] == "exact"
    code, rep = run_cli(
        ["checktac", FIXTURES / "classical_xy.json", "--f", "x*y"], capsys
    )
    assert code == 0 and rep["verdict"] == "totally_acyclic"
    code, rep = run_cli(["checktac", FIXTURES / "sos_2x2.json", "--f", "x^2 + y^2"], capsys)
    assert code == 0


def test_reduce_hypotheses_unmet_exit_1(capsys):
    code, rep = run_cli(
        ["reduce", FIXTURES / "classical_xy.json", "--f", "x^2"], capsys
    )
    assert code == 1
    assert rep["kind"] == "HypothesesUnmet"


def test_checktac_false_with_certificate(tmp_path, capsys):
    # eta = x^2 factors through the regular element x, but the reduction
    # mod x has zero maps: certified hypotheses, failed exactness
    desc = {
        "context": {
            "ring": {"field": {"char": 7}, "vars": ["x"], "order": "grevlex", "ideal": []},
            "twist": "identity",
            "eta": "x^2",
        },
        "d": 2,
        "ranks": [1, 1],
        "maps": [[["x"]], [["x"]]],
    }
    path = tmp_path / "xx.json"
    path.write_text(json.dumps(desc))
    code, rep = run_cli(["checktac", path, "--f", "x"], capsys)
    assert code == 2
    assert rep["verdict"] == "not_totally_acyclic"
    assert rep["certificate"]["side"] == "primal"
    assert rep["certificate"]["witness"] is not None


def test_exact_false_with_witness(tmp_path, capsys):
    # (x^3, x^3) over F7[x]/(x^4): nilpotent but not exact
    ring = {"field": {"char": 7}, "vars": ["x"], "order": "grevlex", "ideal": ["x^4"]}
    desc = {
        "ring": ring,
        "lo": -2,
        "hi": 2,
        "period": 2,
        "nilpotency": 2,
        "maps": [[["x^3"]], [["x^3"]], [["x^3"]], [["x^3"]]],
    }
    path = tmp_path / "w.json"
    path.write_text(json.dumps(desc))
    code, rep = run_cli(["exact", path], capsys)
    assert code == 2
    assert rep["certificate"]["failing_position"] is not None
    assert "witness" in rep["certificate"]
    assert rep["certificate"]["solver"]["kind"] == "module_groebner"


def test_endring_verbs(capsys):
    code, rep = run_cli(
        ["endring", FIXTURES / "ring_f7xy_mod_xy.json", "--g", "x"], capsys
    )
    assert code == 0
    assert rep["result"]["gamma"]["ideal"] == ["y"]
    code, rep = run_cli(
        ["endring", FIXTURES / "ring_f7xyz_mod_xz_yz.json", "--g", "x"], capsys
    )
    assert code == 0
    assert rep["result"]["gamma"]["ideal"] == ["z"]


def test_dualq_verb(capsys):
    code, rep = run_cli(
        ["dualq", FIXTURES / "ring_f7xy_mod_xy.json", "--x", "x^2", "--n", "2"], capsys
    )
    assert code == 0


def test_faithful_and_lift(tmp_path, capsys):
    yy = _morphism_file(tmp_path, "yy.json", [[["y"]], [["y"]]])
    code, rep = run_cli(["faithful", yy, "--f", "x*y"], capsys)
    assert code == 0
    assert rep["result"]["downstairs_null"] is True
    fact = json.loads((FIXTURES / "classical_xy.json").read_text())
    lift_desc = {
        "context": fact["context"],
        "d": 2,
        "source": {"ranks": fact["ranks"], "maps": fact["maps"]},
        "target": {"ranks": fact["ranks"], "maps": fact["maps"]},
        "components": [[["y"]], [["y"]]],
    }
    lpath = tmp_path / "lift.json"
    lpath.write_text(json.dumps(lift_desc))
    code, rep = run_cli(["lift", lpath, "--f", "x*y"], capsys)
    assert code == 0
    assert rep["verdict"] == "lifted"


def test_axioms_verb(capsys):
    code, rep = run_cli(
        ["axioms", "--ctx", FIXTURES / "ctx_f7xy_xy.json", "--seed", "42", "--trials", "5"],
        capsys,
    )
    assert code == 0
    assert rep["result"]["failures"] == []


def test_axioms_quantum_context(capsys):
    code, rep = run_cli(
        ["axioms", "--ctx", FIXTURES / "quantum_context.json", "--seed", "7", "--trials", "3"],
        capsys,
    )
    assert code == 0


def test_determinism_byte_identical(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        code = main(
            [
                "axioms",
                "--ctx",
                str(FIXTURES / "ctx_f7xy_xy.json"),
                "--seed",
                "42",
                "--trials",
                "4",
                "--out",
                str(out),
            ]
        )
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_console_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "dfactor.cli", "verify", str(FIXTURES / "classical_xy.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "verified"


def test_odd_d_requires_flag(tmp_path, capsys):
    desc = {
        "context": {
            "ring": {"field": {"char": 7}, "vars": ["x"], "order": "grevlex", "ideal": []},
            "twist": "identity",
            "eta": "x^3",
        },
        "d": 3,
        "ranks": [1, 1, 1],
        "maps": [[["x"]], [["x"]], [["x"]]],
    }
    path = tmp_path / "odd.json"
    path.write_text(json.dumps(desc))
    code, rep = run_cli(["verify", path], capsys)
    assert code == 1
    code, rep = run_cli(["verify", path, "--allow-odd-d"], capsys)
    assert code == 0
