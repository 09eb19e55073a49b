import json
import subprocess
import sys

import numpy as np
import pytest

from fracosc.cli import main
from fracosc.config import ConfigError, load_config
from fracosc.output import read_state_dump, write_state_dump

FAST_DECAY = """
[scheme]
alpha = 0.9
s = 0.9
h = 0.01
t_start = 0.0
t_end = 3.0
seed = 77

[mu]
kind = logistic
mu_min = 1.0
mu_max = 2.0
steepness = 0.0015

[experiment]
kind = decay_check
n_states = 2
half_step = false
"""


def _write(tmp_path, text, name="cfg.ini"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_default_config_loads():
    cfg = load_config(None)
    assert cfg.problem.basis.dim == 3
    assert cfg.problem.basis.modes_per_axis == 4
    assert cfg.alpha == 0.9 and cfg.h == 0.01
    # auto mu steepness passes the envelope check by construction
    from fracosc.coeffs import check_assumptions

    rep = check_assumptions(cfg.problem.omega, cfg.problem.mu, cfg.alpha,
                            cfg.problem.basis, cfg.assumption_grid())
    assert rep.passed


def test_malformed_value_names_key(tmp_path):
    path = _write(tmp_path, "[basis]\nmodes_per_axis = banana\n")
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert "basis.modes_per_axis" in str(err.value)


def test_unknown_key_rejected(tmp_path):
    path = _write(tmp_path, "[scheme]\nalphaa = 0.5\n")
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert "scheme.alphaa" in str(err.value)


def test_inadmissible_exponent_rejected(tmp_path):
    path = _write(tmp_path, "[nonlinearity]\nrho = 6.0\n")
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert "rho" in str(err.value)


def test_cli_config_error_exit_code(tmp_path, capsys):
    path = _write(tmp_path, "[basis]\ndim = 0\n")
    code = main(["simulate", "--config", path, "--out", str(tmp_path / "out")])
    assert code == 2
    err = capsys.readouterr().err
    payload = json.loads(err)
    assert payload["error"] == "config"
    assert (tmp_path / "out" / "error.json").exists()


def test_simulate_zero_span_single_row(tmp_path):
    cfg = _write(tmp_path, "[scheme]\nt_end = 0.0\n\n[mu]\nsteepness = 0.0015\n")
    out = tmp_path / "sim"
    assert main(["simulate", "--config", cfg, "--out", str(out)]) == 0
    lines = [l for l in (out / "trajectory.csv").read_text().splitlines() if not l.startswith("#")]
    assert lines[0].startswith("t,E,Phi,L")
    assert len(lines) == 2  # header + the single initial row


def test_simulate_reproducible_bytes(tmp_path):
    cfg = _write(tmp_path, "[scheme]\nt_end = 1.0\nseed = 99\n\n[mu]\nsteepness = 0.0015\n")
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["simulate", "--config", cfg, "--out", str(out1)]) == 0
    assert main(["simulate", "--config", cfg, "--out", str(out2)]) == 0
    assert (out1 / "trajectory.csv").read_bytes() == (out2 / "trajectory.csv").read_bytes()


def test_simulate_blow_up_exit_code(tmp_path):
    cfg = _write(tmp_path, """
[nonlinearity]
beta = 4.9
lambda_f = 1e-9
rho = 4.0

[mu]
steepness = 0.0015

[scheme]
t_end = 30.0

[experiment]
kind = simulate
blow_threshold = 10.0
""")
    out = tmp_path / "blow"
    assert main(["simulate", "--config", cfg, "--out", str(out)]) == 3


def test_decay_check_cli(tmp_path):
    cfg = _write(tmp_path, FAST_DECAY)
    out = tmp_path / "dc"
    assert main(["decay-check", "--config", cfg, "--out", str(out)]) == 0
    text = (out / "decay_check.csv").read_text()
    assert "worst_margin" in text


def test_decay_check_assumption_failure(tmp_path, capsys):
    cfg = _write(tmp_path, FAST_DECAY.replace("steepness = 0.0015", "steepness = 10.0"))
    out = tmp_path / "dcbad"
    code = main(["decay-check", "--config", cfg, "--out", str(out)])
    assert code == 1
    payload = json.loads(capsys.readouterr().err)
    assert payload["error"] == "assumptions"


def test_spectrum_table_alpha_one_pure_imaginary(tmp_path):
    cfg = _write(tmp_path, "[mu]\nsteepness = 0.0015\n\n[experiment]\nkind = spectrum_table\nalphas = 1.0\n")
    out = tmp_path / "spec"
    assert main(["spectrum-table", "--config", cfg, "--out", str(out)]) == 0
    rows = [l for l in (out / "spectrum.csv").read_text().splitlines()
            if not l.startswith("#") and not l.startswith("alpha")]
    for row in rows:
        cols = row.split(",")
        assert float(cols[4]) == 0.0 and float(cols[6]) == 0.0  # re_plus, re_minus
        assert float(cols[5]) != 0.0


def test_verify_operator_fast(tmp_path):
    cfg = _write(tmp_path, "[mu]\nsteepness = 0.0015\n\n[experiment]\nkind = verify_operator\nn_triples = 50\n")
    out = tmp_path / "vo"
    assert main(["verify-operator", "--config", cfg, "--out", str(out)]) == 0
    text = (out / "verify_operator.csv").read_text()
    assert "block_product_identity" in text and "FAIL" not in (out / "report.txt").read_text()


def test_check_assumptions_cli_failure(tmp_path):
    cfg = _write(tmp_path, "[mu]\nsteepness = 10.0\n")
    out = tmp_path / "ca"
    assert main(["check-assumptions", "--config", cfg, "--out", str(out)]) == 1
    report = (out / "report.txt").read_text()
    assert "FAIL mu_envelope" in report


def test_state_dump_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    times = np.array([0.0, 0.5, 1.0])
    U = rng.standard_normal((3, 8))
    V = rng.standard_normal((3, 8))
    path = tmp_path / "states.bin"
    write_state_dump(path, 3, 2, 0.9, times, U, V)
    dim, modes, alpha, t2, U2, V2 = read_state_dump(path)
    assert (dim, modes, alpha) == (3, 2, 0.9)
    np.testing.assert_array_equal(t2, times)
    np.testing.assert_array_equal(U2, U)
    np.testing.assert_array_equal(V2, V)


def test_state_dump_written_by_simulate(tmp_path):
    cfg = _write(tmp_path, """
[scheme]
t_end = 0.5

[mu]
steepness = 0.0015

[experiment]
kind = simulate
record_every = 10

[output]
write_states = true
""")
    out = tmp_path / "dump"
    assert main(["simulate", "--config", cfg, "--out", str(out)]) == 0
    dim, modes, alpha, times, U, V = read_state_dump(out / "states.bin")
    assert dim == 3 and modes == 4 and alpha == 0.9
    assert times.shape[0] == U.shape[0] == V.shape[0] == 6


def test_cli_entry_point_subprocess():
    res = subprocess.run([sys.executable, "-m", "fracosc.cli", "print-config"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "[basis]" in res.stdout
