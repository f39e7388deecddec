import json
import math
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from spinrevival import deform_chain, krawtchouk_chain, para_krawtchouk_chain
from spinrevival.cli import EXIT_CONFIG, EXIT_DOMAIN, EXIT_IO, EXIT_OK, main
from spinrevival.fileio import (CHAIN_SCHEMA, DESIGN_FILE_SCHEMA, REPORT_SCHEMA, SPECTRAL_SCHEMA,
                                dumps, read_amplitudes_csv)

PI = math.pi


def write_chain(path, chain):
    path.write_text(dumps(chain.to_dict()))
    return str(path)


def run(argv, tmp_path, name="out"):
    out = tmp_path / name
    code = main([*argv, "-o", str(out)])
    return code, (out.read_text() if out.exists() else None)


# design

def test_design_pst_limit_is_krawtchouk(tmp_path):
    code, text = run(["design", "--n", "5", "--theta", "0", "--psi", "1.5707963"], tmp_path)
    assert code == EXIT_OK
    obj = json.loads(text)
    jsonschema.validate(obj, DESIGN_FILE_SCHEMA)
    ref = krawtchouk_chain(5)
    np.testing.assert_allclose(obj["chain"]["couplings"], ref.couplings, rtol=1e-12)
    np.testing.assert_allclose(obj["chain"]["fields"], 0.0, atol=1e-12)


def test_design_balanced_is_para_krawtchouk(tmp_path):
    code, text = run(["design", "--n", "3", "--theta", repr(PI / 8), "--psi", repr(PI / 2)], tmp_path)
    assert code == EXIT_OK
    obj = json.loads(text)
    assert obj["record"]["delta"] == pytest.approx(1.5, abs=1e-12)
    ref = para_krawtchouk_chain(3, 1.5, 1.0, -1.75)
    np.testing.assert_allclose(obj["chain"]["couplings"], ref.couplings, rtol=1e-12)
    np.testing.assert_allclose(obj["chain"]["fields"], ref.fields, atol=1e-12)


def test_design_degrees_flag(tmp_path):
    _, rad = run(["design", "--n", "4", "--theta", repr(PI / 8), "--psi", repr(PI / 3)], tmp_path, "a")
    _, deg = run(["design", "--n", "4", "--theta", "22.5", "--psi", "60", "--degrees"], tmp_path, "b")
    a, b = json.loads(rad), json.loads(deg)
    np.testing.assert_allclose(a["chain"]["couplings"], b["chain"]["couplings"], rtol=1e-12)


def test_design_boundary_exits_2(tmp_path, capsys):
    code, _ = run(["design", "--n", "4", "--theta", repr(PI / 4), "--psi", "0"], tmp_path)
    assert code == EXIT_DOMAIN
    assert "Degenerate" in capsys.readouterr().err


def test_design_nonpositive_time_is_config_error(tmp_path):
    assert run(["design", "--n", "4", "--theta", "0.1", "--psi", "0", "--T", "0"], tmp_path)[0] == EXIT_CONFIG


def test_argument_errors_exit_4(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["design", "--n", "four", "--theta", "0", "--psi", "0"])
    assert exc.value.code == EXIT_CONFIG
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_CONFIG


# simulate

def test_simulate_mirror_inversion(tmp_path):
    path = write_chain(tmp_path / "k.json", krawtchouk_chain(4))
    code, text = run(["simulate", path, "--times", f"0,{PI!r}"], tmp_path)
    assert code == EXIT_OK
    times, amp = read_amplitudes_csv(text)
    assert times.tolist() == [0.0, PI]
    prob = np.abs(amp) ** 2
    np.testing.assert_allclose(prob[0], [1, 0, 0, 0, 0], atol=1e-12)
    np.testing.assert_allclose(prob[1], [0, 0, 0, 0, 1], atol=1e-10)


def test_simulate_balanced_revival(tmp_path):
    path = write_chain(tmp_path / "p.json", para_krawtchouk_chain(3, 1.5, 1.0, -1.75))
    code, text = run(["simulate", path, "--times", repr(PI)], tmp_path)
    assert code == EXIT_OK
    _, amp = read_amplitudes_csv(text)
    np.testing.assert_allclose(np.abs(amp[0]) ** 2, [0.5, 0, 0, 0.5], atol=1e-10)


def test_simulate_probability_column(tmp_path):
    path = write_chain(tmp_path / "k.json", deform_chain(krawtchouk_chain(6), PI / 8))
    code, text = run(["simulate", path, "--t-end", "7.0", "--n-steps", "23", "--start", "2"], tmp_path)
    assert code == EXIT_OK
    lines = text.strip().splitlines()
    assert lines[0] == "t,site,re,im,prob"
    rows = np.array([[float(x) for x in line.split(",")] for line in lines[1:]])
    assert rows.shape == (23 * 7, 5)
    np.testing.assert_allclose(rows[:, 4], rows[:, 2] ** 2 + rows[:, 3] ** 2, rtol=1e-14, atol=1e-300)
    sums = rows[:, 4].reshape(23, 7).sum(axis=1)
    np.testing.assert_allclose(sums, 1.0, atol=1e-10)


def test_simulate_csv_round_trips_doubles(tmp_path):
    chain = krawtchouk_chain(3)
    path = write_chain(tmp_path / "k.json", chain)
    _, text = run(["simulate", path, "--times", "0.123456789012345678,1.1"], tmp_path)
    _, amp = read_amplitudes_csv(text)
    from spinrevival import evolve
    ref = evolve(chain, [0.123456789012345678, 1.1])
    assert np.array_equal(amp, ref)


@pytest.mark.parametrize("extra", [["--times", ","], ["--n-steps", "0"], ["--times", "a,b"]])
def test_simulate_bad_grid_exits_4(tmp_path, extra):
    path = write_chain(tmp_path / "k.json", krawtchouk_chain(3))
    assert run(["simulate", path, *extra], tmp_path)[0] == EXIT_CONFIG


def test_simulate_bad_start_exits_4(tmp_path):
    path = write_chain(tmp_path / "k.json", krawtchouk_chain(3))
    assert run(["simulate", path, "--start", "4"], tmp_path)[0] == EXIT_CONFIG


@pytest.mark.parametrize("content", ["{not json", '{"n": 2, "couplings": [1], "fields": [0, 0, 0]}',
                                     "[1, 2]", '{"n": 1, "couplings": ["x"], "fields": [0, 0]}'])
def test_simulate_malformed_input_exits_3(tmp_path, content):
    bad = tmp_path / "bad.json"
    bad.write_text(content)
    assert run(["simulate", str(bad)], tmp_path)[0] == EXIT_IO


def test_missing_file_exits_3(tmp_path):
    assert run(["verify", str(tmp_path / "nope.json")], tmp_path)[0] == EXIT_IO


# verify

def test_verify_krawtchouk(tmp_path):
    path = write_chain(tmp_path / "k.json", krawtchouk_chain(6))
    code, text = run(["verify", path], tmp_path)
    assert code == EXIT_OK
    rep = json.loads(text)
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert rep["pst"] and rep["persymmetric"]
    assert rep["pst_fidelity"] == pytest.approx(1.0, abs=1e-10)
    assert rep["revival"]["theta"] == pytest.approx(0.0, abs=1e-8)
    assert rep["bilattice"]["delta"] == pytest.approx(1.0, abs=1e-9)


def test_verify_deformed(tmp_path):
    path = write_chain(tmp_path / "d.json", deform_chain(krawtchouk_chain(5), PI / 8))
    code, text = run(["verify", path, "--theta", repr(PI / 8), "--psi", "0", "--phi", "0"], tmp_path)
    assert code == EXIT_OK
    rep = json.loads(text)
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert rep["persymmetric"] is False
    assert rep["pst"] is False
    assert rep["revival"]["theta"] == pytest.approx(PI / 8, abs=1e-8)
    assert math.sin(rep["revival"]["psi"]) == pytest.approx(0.0, abs=1e-8)
    assert "target_residual" in rep


def test_verify_random_chain(tmp_path):
    rng = np.random.default_rng(11)
    from spinrevival import JacobiMatrix
    chain = JacobiMatrix(rng.uniform(0.5, 1.5, 6), rng.uniform(-0.5, 0.5, 7))
    path = write_chain(tmp_path / "r.json", chain)
    code, text = run(["verify", path], tmp_path)
    assert code == EXIT_OK
    rep = json.loads(text)
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert rep["pst"] is False and rep["revival"] is None
    assert rep["leak"] > 1e-3


def test_verify_reads_design_file(tmp_path):
    run(["design", "--n", "4", "--theta", "0.3", "--psi", "1.0"], tmp_path, "d.json")
    code, text = run(["verify", str(tmp_path / "d.json")], tmp_path)
    rep = json.loads(text)
    assert code == EXIT_OK and rep["revival"]["theta"] == pytest.approx(0.3, abs=1e-8)


# surgery and models

def test_surgery_keeps_pst(tmp_path):
    path = write_chain(tmp_path / "k.json", krawtchouk_chain(8))
    for flag in (["--level", "-1"], ["--level", "0"], ["--pair", "3"]):
        code, text = run(["surgery", path, *flag], tmp_path, "s.json")
        assert code == EXIT_OK
        obj = json.loads(text)
        jsonschema.validate(obj["chain"], CHAIN_SCHEMA)
        jsonschema.validate(obj["spectral_data"], SPECTRAL_SCHEMA)
        code, text = run(["verify", str(tmp_path / "s.json")], tmp_path, "v.json")
        assert json.loads(text)["pst"]


def test_surgery_bad_index_exits_2(tmp_path):
    path = write_chain(tmp_path / "k.json", krawtchouk_chain(4))
    assert run(["surgery", path, "--level", "2"], tmp_path)[0] == EXIT_DOMAIN
    assert run(["surgery", path, "--pair", "4"], tmp_path)[0] == EXIT_DOMAIN


def test_models_commands(tmp_path):
    code, text = run(["models", "para-krawtchouk", "--n", "3", "--delta", "1.5"], tmp_path)
    assert code == EXIT_OK
    obj = json.loads(text)
    np.testing.assert_allclose(obj["chain"]["fields"], 0.0, atol=1e-14)
    np.testing.assert_allclose(obj["spectral_data"]["points"], [-1.75, -0.25, 0.25, 1.75], atol=1e-12)
    code, text = run(["models", "para-krawtchouk", "--n", "2", "--delta", "0.5", "--b", "0"], tmp_path)
    np.testing.assert_allclose(json.loads(text)["chain"]["fields"], [0.5, 1.5, 0.5], atol=1e-12)
    code, text = run(["models", "fr-half", "--n", "4", "--theta", "0.2"], tmp_path)
    assert code == EXIT_OK and "phi" in json.loads(text)
    assert run(["models", "para-krawtchouk", "--delta", "2.5"], tmp_path)[0] == EXIT_DOMAIN


def test_models_reconstruct(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"points": [-2.0, -1.0, 0.0, 1.0, 2.0]}))
    code, text = run(["models", "reconstruct", "--spectrum", str(spec)], tmp_path)
    assert code == EXIT_OK
    np.testing.assert_allclose(json.loads(text)["chain"]["couplings"], krawtchouk_chain(4).couplings, rtol=1e-12)
    code, text = run(["models", "reconstruct", "--spectrum", str(spec), "--weights", "fr",
                      "--theta", repr(PI / 8)], tmp_path)
    assert code == EXIT_OK
    assert run(["models", "reconstruct"], tmp_path)[0] == EXIT_CONFIG
    spec.write_text(json.dumps({"points": [0.0, 1.0], "weights": [0.25, 0.75]}))
    code, text = run(["models", "reconstruct", "--spectrum", str(spec), "--weights", "given"], tmp_path)
    np.testing.assert_allclose(json.loads(text)["spectral_data"]["weights"], [0.25, 0.75], rtol=1e-12)


# invariants

def test_outputs_are_byte_identical(tmp_path):
    path = write_chain(tmp_path / "k.json", deform_chain(krawtchouk_chain(5), 0.3))
    for argv in (["design", "--n", "6", "--theta", "0.2", "--psi", "0.7"],
                 ["simulate", path, "--n-steps", "17"],
                 ["verify", path],
                 ["surgery", path, "--pair", "2"]):
        _, first = run(argv, tmp_path, "a")
        _, second = run(argv, tmp_path, "b")
        assert first == second and first


def test_stdout_and_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "spinrevival", "design", "--n", "3", "--theta", "0.1",
                           "--psi", "0.5"], capture_output=True, text=True, check=True)
    jsonschema.validate(json.loads(proc.stdout), DESIGN_FILE_SCHEMA)
    proc = subprocess.run([sys.executable, "-m", "spinrevival", "design", "--n", "3", "--theta", "0.8",
                           "--psi", "0.5"], capture_output=True, text=True)
    assert proc.returncode == EXIT_DOMAIN
