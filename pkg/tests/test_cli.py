"""Command line interface: subcommands, exit codes, determinism."""

import json
import subprocess
import sys

import numpy as np
import pytest

import drslab as dl
from drslab.cli import EXIT_ERROR, EXIT_NO_CONVERGENCE, EXIT_OK, main

L1_QUAD = {
    "A": {"type": "prox_l1", "weight": 1.0},
    "B": {"type": "prox_quadratic", "Q": [[1.0]], "q": [-1.0]},
    "tau": 1.0,
}

SKEW = {
    "A": {"type": "linear", "M": [[0.0, -1.0], [1.0, 0.0]]},
    "B": {"type": "zero"},
    "tau": 1.0,
}

IDENTITY_PAIR = {
    "A": {"type": "scaled_identity", "alpha": 1.0},
    "B": {"type": "scaled_identity", "alpha": 1.0},
    "dim": 1,
}


def write_doc(tmp_path, doc, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


# ---------------------------------------------------------------------------
# run-drs


def test_run_drs_csv_to_stdout(tmp_path, capsys):
    path = write_doc(tmp_path, dict(L1_QUAD, z0=[5.0]))
    code = main(["run-drs", "--problem", path])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    lines = captured.out.strip().split("\n")
    assert lines[0] == "k,z0,x0,w0,residual"
    final_x = float(lines[-1].split(",")[2])
    assert abs(final_x) <= 1e-8
    assert "status: converged" in captured.err
    assert "certificate: pass" in captured.err


def test_run_drs_json_format(tmp_path, capsys):
    path = write_doc(tmp_path, dict(L1_QUAD, z0=[5.0]))
    code = main(["run-drs", "--problem", path, "--format", "json"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    payload = json.loads(captured.out)
    assert payload["status"] == "converged"
    assert payload["certificate"] is True
    assert abs(payload["x"][-1][0]) <= 1e-8


def test_run_drs_exit_two_when_capped(tmp_path, capsys):
    path = write_doc(tmp_path, dict(IDENTITY_PAIR, z0=[8.0]))
    code = main(["run-drs", "--problem", path, "--iters", "3"])
    capsys.readouterr()
    assert code == EXIT_NO_CONVERGENCE


def test_run_drs_flag_overrides_file(tmp_path, capsys):
    path = write_doc(tmp_path, dict(L1_QUAD, z0=[5.0], tau=1.0))
    code = main(["run-drs", "--problem", path, "--tau", "0.5", "--format", "json"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    payload = json.loads(captured.out)
    # first x is J_B(0.5, 5) = (5 + 0.5)/1.5 = 22/6
    assert payload["x"][0][0] == pytest.approx(5.5 / 1.5)


def test_run_drs_writes_file(tmp_path, capsys):
    path = write_doc(tmp_path, dict(L1_QUAD, z0=[5.0]))
    out = tmp_path / "traj.csv"
    code = main(["run-drs", "--problem", path, "--out", str(out)])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert captured.out == ""
    assert out.read_text().startswith("k,z0,x0,w0,residual")


# ---------------------------------------------------------------------------
# error paths


def test_malformed_json_exits_one(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code = main(["run-drs", "--problem", str(path)])
    captured = capsys.readouterr()
    assert code == EXIT_ERROR
    assert "error:" in captured.err


def test_missing_operator_exits_one(tmp_path, capsys):
    path = write_doc(tmp_path, {"B": {"type": "zero"}, "z0": [1.0]})
    code = main(["run-drs", "--problem", str(path)])
    capsys.readouterr()
    assert code == EXIT_ERROR


def test_unknown_operator_tag_exits_one(tmp_path, capsys):
    path = write_doc(tmp_path, {"A": {"type": "mystery"}, "B": {"type": "zero"}, "z0": [1.0]})
    code = main(["run-drs", "--problem", path])
    capsys.readouterr()
    assert code == EXIT_ERROR


def test_missing_file_exits_one(tmp_path, capsys):
    code = main(["run-drs", "--problem", str(tmp_path / "nope.json")])
    capsys.readouterr()
    assert code == EXIT_ERROR


def test_underdetermined_dimension_exits_one(tmp_path, capsys):
    path = write_doc(tmp_path, {"A": {"type": "zero"}, "B": {"type": "zero"}})
    code = main(["run-drs", "--problem", path])
    captured = capsys.readouterr()
    assert code == EXIT_ERROR
    assert "dim" in captured.err


# ---------------------------------------------------------------------------
# check-equivalence


def test_check_equivalence_nonlinear_fallback(tmp_path, capsys):
    path = write_doc(tmp_path, dict(L1_QUAD, z0=[1.0]))
    code = main(["check-equivalence", "--problem", path])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    payload = json.loads(captured.out)
    assert payload["max_deviation"] <= 1e-8
    assert payload["reduced_path"] == "drs"
    assert payload["iters"] == 100


def test_check_equivalence_direct_path(tmp_path, capsys):
    doc = {
        "A": {"type": "linear", "M": [[1.0, 0.0], [0.0, 2.0]]},
        "B": {"type": "linear", "M": [[0.0, -1.0], [1.0, 0.5]]},
        "tau": 0.75,
        "z0": [1.0, -1.0],
    }
    code = main(["check-equivalence", "--problem", write_doc(tmp_path, doc), "--iters", "60"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    payload = json.loads(captured.out)
    assert payload["reduced_path"] == "direct"
    assert payload["iters"] == 60
    assert set(payload["pairwise"]) == {
        "recursion-lifted",
        "recursion-reduced",
        "lifted-reduced",
    }


def test_check_equivalence_zero_pair_deviation_is_zero(tmp_path, capsys):
    doc = {"A": {"type": "zero"}, "B": {"type": "zero"}, "z0": [1.0, -2.0]}
    code = main(["check-equivalence", "--problem", write_doc(tmp_path, doc)])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert json.loads(captured.out)["max_deviation"] == 0.0


def test_check_equivalence_stock_problem_is_tight(tmp_path, capsys):
    path = write_doc(tmp_path, dict(SKEW, z0=[1.0, 0.0]))
    code = main(["check-equivalence", "--problem", path])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    payload = json.loads(captured.out)
    assert payload["iters"] == 100
    assert payload["max_deviation"] <= 1e-10


# ---------------------------------------------------------------------------
# check-cycle


def test_check_cycle_finds_skew_violation(tmp_path, capsys):
    doc = {"op": {"type": "linear", "M": [[0.0, -1.0], [1.0, 0.0]]}}
    path = write_doc(tmp_path, doc)
    code = main(["check-cycle", "--problem", path, "--trials", "500", "--seed", "7"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    payload = json.loads(captured.out)
    assert payload["witness"] is not None
    assert payload["witness"]["cycle_sum"] > 1e-8
    assert payload["seed"] == 7


def test_check_cycle_clean_on_subdifferential(tmp_path, capsys):
    doc = {"op": {"type": "prox_l1", "weight": 1.0}, "dim": 2}
    path = write_doc(tmp_path, doc)
    code = main(["check-cycle", "--problem", path, "--trials", "200"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    payload = json.loads(captured.out)
    assert payload["witness"] is None


def test_check_cycle_accepts_a_key(tmp_path, capsys):
    path = write_doc(tmp_path, SKEW)
    code = main(["check-cycle", "--problem", path, "--trials", "500", "--seed", "7"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert json.loads(captured.out)["witness"] is not None


# ---------------------------------------------------------------------------
# witness-skew


def test_witness_skew_frozen_example(tmp_path, capsys):
    doc = {"C": [[1.0]], "a1": [1.0], "b1": [0.0]}
    code = main(["witness-skew", "--problem", write_doc(tmp_path, doc)])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    payload = json.loads(captured.out)
    assert payload["xi"] == pytest.approx(2.0, abs=1e-12)
    assert payload["cycle_sum"] == pytest.approx(2.0, abs=1e-12)
    assert payload["n"] == 3


def test_witness_skew_seeded_draw(tmp_path, capsys):
    doc = {"C": [[1.0, 0.5], [0.0, 2.0]]}
    code = main(["witness-skew", "--problem", write_doc(tmp_path, doc), "--seed", "3"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    payload = json.loads(captured.out)
    assert payload["xi"] > 1e-8


def test_witness_skew_requires_coupling(tmp_path, capsys):
    code = main(["witness-skew", "--problem", write_doc(tmp_path, {"a1": [1.0]})])
    capsys.readouterr()
    assert code == EXIT_ERROR
    code = main(["witness-skew", "--problem", write_doc(tmp_path, {"C": [[0.0]]})])
    capsys.readouterr()
    assert code == EXIT_ERROR


# ---------------------------------------------------------------------------
# classify-resolvent


def test_classify_resolvent_skew(tmp_path, capsys):
    path = write_doc(tmp_path, SKEW)
    code = main(["classify-resolvent", "--problem", path])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    payload = json.loads(captured.out)
    assert payload["verdict"] == "NotProximal"
    assert payload["symmetry_defect"] == pytest.approx(2.0, abs=1e-10)
    assert np.allclose(payload["recovered_M"], [[0.0, -1.0], [1.0, 0.0]], atol=1e-10)
    assert np.allclose(payload["T"], [[0.5, 0.5], [-0.5, 0.5]], atol=1e-12)


def test_classify_resolvent_scalar(tmp_path, capsys):
    path = write_doc(tmp_path, IDENTITY_PAIR)
    code = main(["classify-resolvent", "--problem", path])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert json.loads(captured.out)["verdict"] == "Proximal"


def test_classify_resolvent_nonlinear_errors(tmp_path, capsys):
    path = write_doc(tmp_path, dict(L1_QUAD, dim=1))
    code = main(["classify-resolvent", "--problem", path])
    captured = capsys.readouterr()
    assert code == EXIT_ERROR
    assert "NotLinear" in captured.err


# ---------------------------------------------------------------------------
# moreau-check


def test_moreau_check_single_operator(tmp_path, capsys):
    doc = {"op": {"type": "prox_l1", "weight": 0.5}, "dim": 3, "tau": 2.0}
    code = main(["moreau-check", "--problem", write_doc(tmp_path, doc)])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    payload = json.loads(captured.out)
    assert payload["ok"] is True
    assert payload["max_residual"] <= 1e-10
    assert payload["trials"] == 100


def test_moreau_check_problem_pair(tmp_path, capsys):
    path = write_doc(tmp_path, dict(SKEW))
    code = main(["moreau-check", "--problem", path, "--trials", "50"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    payload = json.loads(captured.out)
    assert set(payload["per_operator"]) == {"A", "B"}
    assert payload["ok"] is True


# ---------------------------------------------------------------------------
# determinism


def test_repeat_runs_are_byte_identical(tmp_path, capsys):
    path = write_doc(tmp_path, dict(L1_QUAD, z0=[5.0]))
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["run-drs", "--problem", path, "--out", str(out1)]) == EXIT_OK
    assert main(["run-drs", "--problem", path, "--out", str(out2)]) == EXIT_OK
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_check_cycle_repeat_runs_identical(tmp_path, capsys):
    path = write_doc(tmp_path, SKEW)
    outs = []
    for name in ("c1.json", "c2.json"):
        out = tmp_path / name
        assert (
            main(["check-cycle", "--problem", path, "--trials", "300", "--out", str(out)])
            == EXIT_OK
        )
        outs.append(out.read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1]


def test_report_commands_repeat_byte_identical(tmp_path, capsys):
    eq_doc = write_doc(tmp_path, dict(SKEW, z0=[1.0, 0.5]), "eq.json")
    cl_doc = write_doc(tmp_path, SKEW, "cl.json")
    mo_doc = write_doc(
        tmp_path, {"op": {"type": "prox_l1", "weight": 0.5}, "dim": 3}, "mo.json"
    )
    for args in (
        ["check-equivalence", "--problem", eq_doc],
        ["classify-resolvent", "--problem", cl_doc],
        ["moreau-check", "--problem", mo_doc],
    ):
        blobs = []
        for name in ("r1.json", "r2.json"):
            out = tmp_path / name
            assert main([*args, "--out", str(out)]) == EXIT_OK
            blobs.append(out.read_bytes())
        capsys.readouterr()
        assert blobs[0] == blobs[1]


def test_witness_skew_seeded_repeats_identical(tmp_path, capsys):
    path = write_doc(tmp_path, {"C": [[1.0, 0.5], [0.0, 2.0]]})
    blobs = []
    for name in ("w1.json", "w2.json"):
        out = tmp_path / name
        assert (
            main(["witness-skew", "--problem", path, "--seed", "9", "--out", str(out)])
            == EXIT_OK
        )
        blobs.append(out.read_bytes())
    capsys.readouterr()
    assert blobs[0] == blobs[1]


# ---------------------------------------------------------------------------
# module entry point


def test_module_invocation_smoke(tmp_path):
    path = write_doc(tmp_path, dict(L1_QUAD, z0=[5.0]))
    proc = subprocess.run(
        [sys.executable, "-m", "drslab.cli", "run-drs", "--problem", path, "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == EXIT_OK
    assert json.loads(proc.stdout)["status"] == "converged"
    assert "certificate: pass" in proc.stderr
