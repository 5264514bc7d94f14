import json
import math
import subprocess
import sys

import numpy as np
import pytest

from qcorr.lab import fixtures
from qcorr.lab.cli import main
from qcorr.lab.config import ExperimentConfig, load_config, parse_config_text
from qcorr.lab.runner import run_example1, run_example2, run_thermal, x_grid


def test_reference_intervals_fixture():
    ref = fixtures.reference_intervals()
    assert len(ref) == 24
    assert ref[0] == (4.000, 4.008) and ref[-1] == (7.893, 7.895)
    for hl in fixtures.HIGHLIGHTED_INTERVALS:
        assert hl in ref
    assert all(a < b for a, b in ref)


def test_fixture_matrix_is_hermitian_with_unit_trace():
    m = fixtures.EXAMPLE2_RHO0
    np.testing.assert_array_equal(m, m.conj().T)
    assert abs(np.trace(m) - 1.0) <= 1e-6


def test_parse_config_text():
    vals = parse_config_text("# comment\nbeta = 2.5\n\nlog_base=two  # trailing\nseed = 7\n")
    assert vals == {"beta": 2.5, "log_base": "two", "seed": 7}
    with pytest.raises(KeyError):
        parse_config_text("nonsense = 1")
    with pytest.raises(ValueError):
        parse_config_text("beta 2")


def test_load_config_precedence(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("beta = 2.0\ndt = 1e-3\n")
    cfg = load_config("thermal", p, {"beta": "3.0"})
    assert cfg.beta == 3.0 and cfg.dt == 1e-3 and cfg.t_min == 0.0 and cfg.t_max == 2.0
    default = load_config("example2")
    assert (default.t_min, default.t_max, default.dt) == (4.0, 8.0, 4e-5)
    assert (default.x_min, default.x_max, default.x_step) == (0.27, 0.9, 0.001)


@pytest.mark.parametrize(
    "kwargs", [{"experiment": "nope"}, {"dt": 0.0}, {"x_min": 1.0}, {"log_base": "ten"}]
)
def test_invalid_config(kwargs):
    base = {"experiment": "example1"}
    base.update(kwargs)
    with pytest.raises(ValueError):
        ExperimentConfig(**base)


def test_x_grid_is_exact_decimal():
    xs = x_grid(0.27, 0.9, 0.001)
    assert len(xs) == 631 and xs[0] == 0.27 and xs[-1] == 0.9
    assert 0.645 in xs


def test_example1_artifacts(tmp_path):
    summary = run_example1(ExperimentConfig("example1", output_dir=str(tmp_path)))
    lines = (tmp_path / "example1.csv").read_text().splitlines()
    assert lines[0] == "x,qmi,chi_norm2"
    assert len(lines) == 632
    on_disk = json.loads((tmp_path / "example1_summary.json").read_text())
    assert on_disk == summary
    assert summary["all_states_valid"] and summary["qmi_range"] > 0
    assert summary["max_chi_norm2_deviation"] <= 1e-12


def test_example1_base_two_moves_values_not_argmin(tmp_path):
    nat = run_example1(ExperimentConfig("example1", output_dir=str(tmp_path / "a")))
    two = run_example1(ExperimentConfig("example1", log_base="two", output_dir=str(tmp_path / "b")))
    assert two["argmin_x"] == nat["argmin_x"]
    assert two["min_qmi"] == pytest.approx(nat["min_qmi"] / math.log(2), rel=1e-9)


def test_example2_csv_is_deterministic_and_grid_aligned(tmp_path):
    cfg_a = ExperimentConfig("example2", t_max=5.0, output_dir=str(tmp_path / "a"))
    cfg_b = ExperimentConfig("example2", t_max=5.0, output_dir=str(tmp_path / "b"))
    s = run_example2(cfg_a)
    run_example2(cfg_b)
    a = (tmp_path / "a" / "example2.csv").read_bytes()
    assert a == (tmp_path / "b" / "example2.csv").read_bytes()
    assert a.endswith(b"\n")
    header = a.split(b"\n", 1)[0].decode()
    assert header == "t,qmi,chi_norm2,qmi_rate,chi_norm2_rate,sign_product"
    for t0, t1 in s["intervals"]:
        for t in (t0, t1):
            k = round((t - 4.0) / 4e-5)
            assert abs(t - (4.0 + k * 4e-5)) <= 1e-9


def test_thermal_zero_interaction(tmp_path):
    s = run_thermal(ExperimentConfig("thermal", t_min=0.0, t_max=1.0, dt=1e-3, interaction_scale=0.0, output_dir=str(tmp_path)))
    assert s["max_qmi"] == pytest.approx(0.0, abs=1e-12)
    assert s["area_law_bound"] == 0.0 and s["bound_held"]


def test_cli_success_and_outputs(tmp_path, capsys):
    rc = main(["thermal", "--t_max", "0.5", "--dt", "1e-3", "--output_dir", str(tmp_path)])
    assert rc == 0
    report = json.loads((tmp_path / "thermal_summary.json").read_text())
    assert report["bound_held"] and report["area_law_bound"] == 15.0
    assert report["max_heat_residual"] <= 1e-8
    assert json.loads(capsys.readouterr().out)["experiment"] == "thermal"


def test_cli_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"x_min = 0.5\nx_max = 0.8\noutput_dir = {tmp_path}\n")
    assert main(["example1", "--config", str(cfg)]) == 0
    assert json.loads((tmp_path / "example1_summary.json").read_text())["x_min"] == 0.5


def test_cli_invalid_state_exit_code(tmp_path, capsys):
    # the family is a valid state only for x in about [0.267, 0.907]
    rc = main(["example1", "--x_min", "0.01", "--x_max", "0.2", "--output_dir", str(tmp_path)])
    assert rc == 2
    assert "invalid state at x=" in capsys.readouterr().err


def test_cli_mismatch_exit_code(tmp_path):
    # a window that misses the highlighted intervals cannot reproduce the reference
    assert main(["example2", "--t_min", "5.0", "--t_max", "5.5", "--output_dir", str(tmp_path)]) == 3


def test_cli_bad_flag_value(tmp_path):
    assert main(["example2", "--dt", "-1", "--output_dir", str(tmp_path)]) == 2


def test_console_module_entry(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "qcorr.lab", "example1", "--x_max", "0.3", "--output_dir", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 3
    assert (tmp_path / "example1.csv").exists()
