import csv
import json
import math

import pytest

from tmsdyn.cli import (CSV_COLUMNS, ConfigError, main, parse_config,
                        preset_names, run_scenario, run_sweep)


def base_config(**output):
    out = dict(eta_end=20.0, num_samples=201, csv="run.csv",
               summary="run.json", analytic="auto")
    out.update(output)
    return {
        "mode": "both",
        "model": {"chi": 1.0},
        "pulse": {"shape": "gaussian_quadratic", "lambda": 0.3, "eta0": 1.0},
        "state": {"r": 0.2, "nu_D": 1.1, "nu_d": 1.0},
        "integrator": {"rel_tol": 1e-9, "abs_tol": 1e-11},
        "output": out,
    }


def test_parse_config_round_trip():
    parsed = parse_config(base_config())
    assert parsed["chi"] == 1.0
    assert parsed["epsilon"] is None
    assert parsed["state"].nu_D == 1.1


def test_config_errors_carry_field_paths():
    cfg = base_config()
    cfg["model"] = {"chi": 1.0, "omega_D": 2.0, "omega_d": 1.0}
    with pytest.raises(ConfigError, match="model"):
        parse_config(cfg)

    cfg = base_config()
    cfg["model"] = {"chi": -1.0}
    with pytest.raises(ConfigError, match="model.chi"):
        parse_config(cfg)

    cfg = base_config()
    cfg["pulse"] = {"shape": "sawtooth"}
    with pytest.raises(ConfigError, match="pulse.shape"):
        parse_config(cfg)

    cfg = base_config()
    del cfg["output"]["eta_end"]
    with pytest.raises(ConfigError, match="output.eta_end"):
        parse_config(cfg)

    cfg = base_config()
    cfg["output"]["analytic"] = "magic"
    with pytest.raises(ConfigError, match="output.analytic"):
        parse_config(cfg)

    cfg = base_config()
    cfg["state"]["temperature"] = 1.0
    with pytest.raises(ConfigError, match="temperature"):
        parse_config(cfg)

    cfg = base_config()
    cfg["integrator"]["frobnicate"] = 1
    with pytest.raises(ConfigError, match="integrator"):
        parse_config(cfg)


def test_run_scenario_outputs(tmp_path):
    report = run_scenario(parse_config(base_config()), str(tmp_path))
    assert (tmp_path / "run.csv").exists()
    assert (tmp_path / "run.json").exists()
    with open(tmp_path / "run.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == CSV_COLUMNS
    assert len(rows) == 1 + 201
    assert all(len(r) == len(CSV_COLUMNS) for r in rows[1:])
    assert float(rows[1][0]) == 0.0
    # post-switch-off closed form tracks the numerics
    assert report["max_tail_deviation"] < 1e-6
    assert report["stability_ok"] is True
    assert report["A"] > 0.0
    # switch-off: root of 0.3 eta^2 exp(-eta^2) = 1e-12 on the decaying tail
    ef = report["switch_off_eta"]
    assert 0.3 * ef ** 2 * math.exp(-ef ** 2) == pytest.approx(1e-12, rel=1e-6)
    saved = json.loads((tmp_path / "run.json").read_text())
    assert saved["A"] == report["A"]


def test_run_scenario_deterministic(tmp_path):
    for name in ("a", "b"):
        cfg = base_config(csv=f"{name}.csv", summary=None)
        run_scenario(parse_config(cfg), str(tmp_path))
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_main_run_preset(tmp_path):
    rc = main(["--out", str(tmp_path), "run", "fig1a"])
    assert rc == 0
    assert (tmp_path / "fig1a.csv").exists()
    summary = json.loads((tmp_path / "fig1a.json").read_text())
    assert summary["chi_below_one"] is True
    assert summary["stability_ok"] is True


def test_main_presets_list(capsys):
    assert main(["presets", "list"]) == 0
    out = capsys.readouterr().out.split()
    assert set(out) == set(preset_names())
    assert {"fig1a", "fig1b", "fig2a", "fig2b"} <= set(out)


def test_main_missing_config(tmp_path, capsys):
    rc = main(["--out", str(tmp_path), "run", "no_such_config"])
    assert rc == 2


def test_main_config_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    cfg = base_config()
    cfg["model"] = {}
    bad.write_text(json.dumps(cfg))
    rc = main(["--out", str(tmp_path), "run", str(bad)])
    assert rc == 2


def test_sweep(tmp_path):
    cfg = base_config(csv=None, summary=None)
    # lambda = 3.0 exceeds the stability bound h_max <= 1 for eta0 = 1
    cfg["sweep"] = {"grid": {"pulse.lambda": [0.1, 0.3, 3.0],
                             "state.r": [0.0, 0.2]},
                    "csv": "sweep.csv"}
    path = run_sweep(cfg, str(tmp_path))
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    assert header[:2] == ["pulse.lambda", "state.r"]
    assert len(body) == 6
    stable_col = header.index("stable")
    a_col = header.index("A")
    for row in body:
        lam = float(row[0])
        assert row[stable_col] == ("False" if lam == 3.0 else "True")
        assert float(row[a_col]) > 0.0
    # amplitude A should not depend on the initial state
    a_by_lam = {}
    for row in body:
        a_by_lam.setdefault(row[0], set()).add(row[a_col])
    assert all(len(v) == 1 for v in a_by_lam.values())


def test_sweep_bad_path(tmp_path):
    cfg = base_config(csv=None, summary=None)
    cfg["sweep"] = {"grid": {"nonexistent.section.param": [1.0]}}
    path = run_sweep(cfg, str(tmp_path))
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 2
    assert "no such config path" in rows[1][-1]
