import json

import numpy as np
import pytest

from werner.cli import parse_terms, run
from werner.diagrams import Partition
from werner.pauli import PauliVector, reconstruct
from werner.states import singlet


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_enumerate_matchings(capsys):
    assert run(["enumerate", "--matchings", "--n", "4"]) == 0
    assert capsys.readouterr().out.splitlines() == ["1 2 | 3 4", "1 4 | 2 3"]


def test_enumerate_json(capsys):
    code, rep = run_json(capsys, ["enumerate", "--n", "3", "--format", "json"])
    assert code == 0 and rep["count"] == rep["catalan"] == 5 and rep["schema_version"] == 1


def test_dimension(capsys):
    code, rep = run_json(capsys, ["dimension", "--n", "3"])
    assert code == 0
    assert (rep["n"], rep["commutant_dim"], rep["catalan"]) == (3, 5, 5)
    code, rep = run_json(capsys, ["dimension", "--n", "6", "--pure"])
    assert rep["pure_dim"] == rep["catalan"] == 5


def test_conjecture(capsys):
    code, rep = run_json(capsys, ["conjecture", "--n", "2"])
    assert code == 0 and rep["verdict"] == "consistent"
    assert run(["conjecture", "--n", "3", "--format", "csv"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert len(rows) == 6 and rows[0].split(",")[1] == "1 | 2 | 3"


def test_state_formats(capsys):
    code, rep = run_json(capsys, ["state", "--singlet", "--format", "amps"])
    amps = np.array(rep["amps"])
    assert np.allclose(amps[:, 0] + 1j * amps[:, 1], singlet())
    code, rep = run_json(capsys, ["state", "--diagram", "1 2", "--format", "pauli"])
    rho = reconstruct(PauliVector.from_json(rep))
    assert np.allclose(rho, np.outer(singlet(), singlet()))
    code, rep = run_json(capsys, ["state", "--cyclic", "00"])
    assert rep["zero"] is True
    code, rep = run_json(capsys, ["state", "--chord", "1 4 | 2 3", "--format", "matrix"])
    assert np.array(rep["matrix"]).shape == (16, 16, 2)
    for flag in (["--cn", "3"], ["--sym", "1,1,0,2"], ["--radial", "1,2"], ["--cyclic", "001"]):
        assert run(["state", *flag, "--format", "pauli"]) == 0
        capsys.readouterr()


def test_state_amps_requires_pure(capsys):
    assert run(["state", "--cn", "3", "--format", "amps"]) == 1


def test_check_and_twirl_roundtrip(capsys, tmp_path):
    code, rep = run_json(capsys, ["check", "--diagram", "1 2 4 | 3 | 5"])
    assert code == 0 and rep["is_werner"] and rep["residual"] < 1e-10
    state = tmp_path / "s.json"
    state.write_text(json.dumps({"matrix": np.diag([1.0, 0, 0, 0]).tolist()}))
    code, rep = run_json(capsys, ["check", "--in", str(state)])
    assert code == 0 and not rep["is_werner"]
    code, rep = run_json(capsys, ["twirl", "--in", str(state), "--monte-carlo", "20000"])
    m = np.array(rep["matrix"])
    out = m[..., 0] + 1j * m[..., 1]
    s = singlet()
    assert np.allclose(out, (np.eye(4) - np.outer(s, s.conj())) / 3, atol=1e-12)
    assert rep["monte_carlo_distance"] < 5e-2


def test_stabilizer_cli(capsys):
    code, rep = run_json(capsys, ["stabilizer", "--terms", "1 2 | 3 4 : 1.0 ; 1 4 | 2 3 : 1.0"])
    assert code == 0
    assert rep["predicted_dim"] == 3 and rep["glb"] == "1 2 3 4" and rep["containment_ok"]
    code, rep = run_json(capsys, ["stabilizer", "--pure", "--terms", "1 2 | 3 4 : 1"])
    assert rep["computed_dim"] == 6 and rep["criterion"] is False


def test_parse_terms():
    terms = parse_terms("1 2 | 3 4 : 1.0 ; 1 4 | 2 3 : -0.5")
    assert terms == [(Partition.of((1, 2), (3, 4)), 1.0), (Partition.of((1, 4), (2, 3)), -0.5)]


@pytest.mark.parametrize("argv", [
    ["check", "--diagram", "1 2 | 2"],
    ["check", "--diagram", "1 a"],
    ["stabilizer", "--terms", "1 2 | 3 4"],
    ["stabilizer", "--terms", "1 2 : x"],
    ["stabilizer", "--terms", "1 2 : 1 ; 1 2 3 : 1"],
    ["enumerate", "--matchings", "--n", "5"],
    ["dimension", "--n", "7"],
    ["dimension", "--n", "3", "--tol", "-1"],
    ["nonsense"],
])
def test_malformed_input_exit_1(capsys, argv):
    assert run(argv) == 1
    capsys.readouterr()


def test_parse_error_reports_position(capsys):
    assert run(["check", "--diagram", "1 2 | x"]) == 1
    assert "position 6" in capsys.readouterr().err


def test_output_is_reproducible(capsys):
    argv = ["check", "--cn", "3", "--samples", "5", "--seed", "99"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert run(["dimension", "--n", "2", "--out", str(path)]) == 0
    assert json.loads(path.read_text())["commutant_dim"] == 2
    assert capsys.readouterr().out == ""


def test_suite_subset(capsys):
    assert run(["suite", "--criteria", "4", "5"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out
