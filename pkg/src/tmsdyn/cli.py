"""Configuration-driven scenario runner.

Subcommands:
    tmsdyn run <config.json>      single scenario, CSV + JSON summary
    tmsdyn sweep <config.json>    grid of scenarios, one CSV row per point
    tmsdyn validate               full validation suite, nonzero exit on failure
    tmsdyn presets list           bundled figure-reproduction configs

Output directory resolution: --out flag, then TMSDYN_OUT, then cwd.
"""

import argparse
import concurrent.futures
import csv
import importlib.resources
import itertools
import json
import os
import sys
import time
from dataclasses import replace

import numpy as np

from .acceptance import run_all
from .analytic import (closed_form_F, extract_from_trajectory,
                       perturbative_F_grid, weak_coupling_A_phi)
from .core_symplectic import InitialStateSpec
from .hamiltonian import ModePair, energy_input_bound, stability_check
from .ode import IntegratorConfig, Trajectory, integrate
from .pipeline import observable_series
from .pulses import (GaussianQuadraticPulse, NullPulse, RaisedCosinePulse,
                     TabulatedPulse, pulse_switch_off, pulse_value)

CSV_COLUMNS = ["eta", "h", "F_plus_num", "F_minus_num", "F_plus_analytic",
               "F_minus_analytic", "N_D", "N_d", "N_plus", "N_minus",
               "neg_paper", "neg_log", "delta_E"]


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")


def _check_keys(section: dict, allowed: set, path: str):
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(path, f"unknown keys {sorted(unknown)}")


def _parse_model(section: dict):
    _check_keys(section, {"chi", "omega_D", "omega_d"}, "model")
    has_chi = "chi" in section
    has_freq = "omega_D" in section or "omega_d" in section
    if has_chi == has_freq:
        raise ConfigError("model", "give exactly one of chi or (omega_D, omega_d)")
    if has_chi:
        chi = float(section["chi"])
        if chi <= 0:
            raise ConfigError("model.chi", "must be positive")
        return chi, None, None
    if "omega_D" not in section or "omega_d" not in section:
        raise ConfigError("model", "both omega_D and omega_d are required")
    modes = ModePair(float(section["omega_D"]), float(section["omega_d"]))
    return modes.chi, modes.epsilon, modes


def _parse_pulse(section: dict):
    shape = section.get("shape")
    if shape == "null":
        _check_keys(section, {"shape"}, "pulse")
        return NullPulse()
    if shape == "gaussian_quadratic":
        _check_keys(section, {"shape", "lambda", "eta0"}, "pulse")
        return GaussianQuadraticPulse(lam=float(section["lambda"]),
                                      eta0=float(section["eta0"]))
    if shape == "tabulated":
        _check_keys(section, {"shape", "etas", "values"}, "pulse")
        return TabulatedPulse(etas=tuple(section["etas"]),
                              values=tuple(section["values"]))
    if shape == "raised_cosine":
        _check_keys(section, {"shape", "amplitude", "start", "duration"}, "pulse")
        return RaisedCosinePulse(amplitude=float(section["amplitude"]),
                                 start=float(section.get("start", 0.0)),
                                 duration=float(section["duration"]))
    raise ConfigError("pulse.shape", f"unknown shape {shape!r}")


def _parse_state(section: dict, modes: ModePair | None):
    _check_keys(section, {"r", "nu_D", "nu_d", "temperature"}, "state")
    r = float(section.get("r", 0.0))
    if "temperature" in section:
        if modes is None:
            raise ConfigError("state.temperature",
                              "requires model given as (omega_D, omega_d)")
        if "nu_D" in section or "nu_d" in section:
            raise ConfigError("state", "give either nu values or temperature")
        return InitialStateSpec.from_temperature(r, modes.omega_D, modes.omega_d,
                                                 float(section["temperature"]))
    return InitialStateSpec(r=r, nu_D=float(section.get("nu_D", 1.0)),
                            nu_d=float(section.get("nu_d", 1.0)))


def _parse_integrator(section: dict) -> IntegratorConfig:
    _check_keys(section, {"method", "rel_tol", "abs_tol", "max_step", "step",
                          "sample_stride"}, "integrator")
    cfg = IntegratorConfig()
    mapping = {"method": str, "rel_tol": float, "abs_tol": float,
               "max_step": float, "step": float, "sample_stride": int}
    fields = {k: conv(section[k]) for k, conv in mapping.items() if k in section}
    return replace(cfg, **fields)


def _parse_output(section: dict):
    _check_keys(section, {"eta_end", "num_samples", "csv", "summary", "analytic"},
                "output")
    if "eta_end" not in section:
        raise ConfigError("output.eta_end", "required")
    analytic = section.get("analytic", "auto")
    if analytic not in ("auto", "perturbative", "closed_form", "none"):
        raise ConfigError("output.analytic", f"unknown value {analytic!r}")
    return dict(eta_end=float(section["eta_end"]),
                num_samples=int(section.get("num_samples", 2001)),
                csv=section.get("csv"), summary=section.get("summary"),
                analytic=analytic)


def parse_config(config: dict):
    _check_keys(config, {"mode", "model", "pulse", "state", "integrator",
                         "output", "sweep"}, "<root>")
    for key in ("model", "pulse", "output"):
        if key not in config:
            raise ConfigError(key, "section required")
    mode = config.get("mode", "both")
    if mode not in ("evolve", "analytic", "both", "validate", "sweep"):
        raise ConfigError("mode", f"unknown mode {mode!r}")
    chi, epsilon, modes = _parse_model(config["model"])
    pulse = _parse_pulse(config["pulse"])
    state = _parse_state(config.get("state", {}), modes)
    integ = _parse_integrator(config.get("integrator", {}))
    output = _parse_output(config["output"])
    return dict(mode=mode, chi=chi, epsilon=epsilon, modes=modes, pulse=pulse,
                state=state, integrator=integ, output=output,
                sweep=config.get("sweep"))


def _resample(traj: Trajectory, etas: np.ndarray) -> Trajectory:
    tp = np.interp(etas, traj.eta, traj.theta_plus)
    tm = (np.interp(etas, traj.eta, traj.theta_minus)
          if traj.theta_minus is not None else None)
    fp, fm = traj.interp(etas)
    return Trajectory(eta=etas, theta_plus=tp, f_plus=fp, f_minus=fm,
                      chi=traj.chi, pulse=traj.pulse, epsilon=traj.epsilon,
                      theta_minus=tm)


def run_scenario(parsed: dict, out_dir: str) -> dict:
    """Execute one scenario; returns the run report (also written as JSON)."""
    t0 = time.perf_counter()
    chi, epsilon = parsed["chi"], parsed["epsilon"]
    pulse, out = parsed["pulse"], parsed["output"]
    mode = parsed["mode"]
    modes = parsed["modes"] or ModePair(1.0, 1.0)

    stability = stability_check(pulse)
    bound = energy_input_bound(pulse)
    eta_f = pulse_switch_off(pulse)
    etas = np.linspace(0.0, out["eta_end"], out["num_samples"])

    traj = None
    if mode in ("evolve", "both"):
        traj = integrate(pulse, chi, out["eta_end"], parsed["integrator"],
                         epsilon=epsilon)
        sampled = _resample(traj, etas)
        fp_num, fm_num = sampled.f_plus, sampled.f_minus
        series = observable_series(sampled, parsed["state"], modes)
    else:
        sampled = None
        fp_num = fm_num = np.full(etas.shape, np.nan)
        series = None

    if traj is not None and eta_f < out["eta_end"]:
        sol = extract_from_trajectory(traj, eta_f)
    else:
        sol = weak_coupling_A_phi(pulse, chi)

    fp_an = np.full(etas.shape, np.nan)
    fm_an = np.full(etas.shape, np.nan)
    analytic = out["analytic"] if mode != "evolve" else "none"
    if analytic in ("auto", "perturbative"):
        mask = etas < eta_f if analytic == "auto" else np.ones_like(etas, bool)
        if np.any(mask):
            fp_an[mask], fm_an[mask] = perturbative_F_grid(pulse, chi, etas[mask])
    if analytic in ("auto", "closed_form"):
        mask = etas >= eta_f if analytic == "auto" else np.ones_like(etas, bool)
        fp_an[mask], fm_an[mask] = closed_form_F(sol, etas[mask])

    max_dev = float("nan")
    if traj is not None and eta_f < out["eta_end"]:
        tail = traj.tail(eta_f)
        fp_c, fm_c = closed_form_F(sol, tail.eta)
        max_dev = float(max(np.max(np.abs(fp_c - tail.f_plus)),
                            np.max(np.abs(fm_c - tail.f_minus))))

    if series is None and mode == "analytic":
        # closed-form route only: build F from the analytic columns
        sampled = Trajectory(eta=etas, theta_plus=np.zeros_like(etas),
                             f_plus=np.where(np.isnan(fp_an), 0.0, fp_an),
                             f_minus=np.where(np.isnan(fm_an), 0.0, fm_an),
                             chi=chi, pulse=pulse, epsilon=epsilon)
        series = observable_series(sampled, parsed["state"], modes)

    if out["csv"]:
        path = os.path.join(out_dir, out["csv"])
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            h_vals = pulse_value(pulse, etas)
            for i in range(etas.size):
                row = [etas[i], h_vals[i], fp_num[i], fm_num[i],
                       fp_an[i], fm_an[i],
                       series.N_D[i], series.N_d[i],
                       series.N_D[i] + series.N_d[i],
                       series.N_D[i] - series.N_d[i],
                       series.negativity[i], series.negativity_log[i],
                       series.delta_E[i]]
                writer.writerow([f"{v:.17g}" for v in row])

    report = {
        "A": sol.amplitude,
        "phi": sol.phase,
        "chi": chi,
        "epsilon": epsilon,
        "chi_below_one": chi < 1.0,
        "energy_input_bound": bound,
        "stability_ok": stability.ok,
        "h_max": stability.h_max,
        "switch_off_eta": eta_f,
        "max_tail_deviation": max_dev,
        "runtime_seconds": time.perf_counter() - t0,
    }
    if out["summary"]:
        with open(os.path.join(out_dir, out["summary"]), "w") as fh:
            json.dump(report, fh, indent=2)
    return report


def _set_by_path(config: dict, dotted: str, value):
    parts = dotted.split(".")
    section = config
    for p in parts[:-1]:
        if p not in section or not isinstance(section[p], dict):
            raise ConfigError(dotted, "no such config path")
        section = section[p]
    section[parts[-1]] = value


def run_sweep(config: dict, out_dir: str, threads: int = 1) -> str:
    """Run a grid of scenarios; returns the path of the sweep CSV."""
    sweep = config.get("sweep")
    if not sweep:
        raise ConfigError("sweep", "section required in sweep mode")
    _check_keys(sweep, {"grid", "csv"}, "sweep")
    grid = sweep.get("grid")
    if not grid:
        raise ConfigError("sweep.grid", "at least one swept parameter required")
    keys = list(grid)
    points = list(itertools.product(*(grid[k] for k in keys)))

    def one(point):
        try:
            cfg = json.loads(json.dumps({k: v for k, v in config.items()
                                         if k not in ("sweep", "mode")}))
            for key, val in zip(keys, point):
                _set_by_path(cfg, key, val)
            cfg["mode"] = "both"
            cfg["output"]["csv"] = None
            cfg["output"]["summary"] = None
            parsed = parse_config(cfg)
            stability = stability_check(parsed["pulse"])
            traj = integrate(parsed["pulse"], parsed["chi"],
                             parsed["output"]["eta_end"], parsed["integrator"],
                             epsilon=parsed["epsilon"])
            eta_f = pulse_switch_off(parsed["pulse"])
            sol = extract_from_trajectory(traj, eta_f)
            tail = traj.tail(eta_f)
            series = observable_series(tail, parsed["state"],
                                       parsed["modes"] or ModePair(1.0, 1.0))
            n_plus = series.N_D + series.N_d
            return [*point, sol.amplitude, sol.phase,
                    float(np.min(n_plus)), float(np.max(n_plus)),
                    float(np.min(series.negativity)), float(np.max(series.negativity)),
                    float(np.min(series.delta_E)), float(np.max(series.delta_E)),
                    stability.ok, ""]
        except Exception as exc:  # per-point failures recorded, run continues
            return [*point] + [float("nan")] * 8 + [False, str(exc)]

    if threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(one, points))
    else:
        rows = [one(p) for p in points]

    path = os.path.join(out_dir, sweep.get("csv", "sweep.csv"))
    header = [*keys, "A", "phi", "N_plus_min", "N_plus_max", "neg_min",
              "neg_max", "delta_E_min", "delta_E_max", "stable", "error"]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([f"{v:.17g}" if isinstance(v, float) else v
                             for v in row])
    return path


def preset_names() -> list[str]:
    root = importlib.resources.files("tmsdyn") / "presets"
    return sorted(p.name.removesuffix(".json") for p in root.iterdir()
                  if p.name.endswith(".json"))


def load_preset(name: str) -> dict:
    res = importlib.resources.files("tmsdyn") / "presets" / f"{name}.json"
    return json.loads(res.read_text())


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="tmsdyn",
                                     description="two-mode squeezing dynamics")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--seed", type=int, default=None,
                        help="reserved; no stochastic component currently")
    parser.add_argument("--threads", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario config")
    p_run.add_argument("config", help="config JSON path or preset name")
    p_sweep = sub.add_parser("sweep", help="run a parameter sweep config")
    p_sweep.add_argument("config")
    sub.add_parser("validate", help="run the validation suite")
    p_presets = sub.add_parser("presets", help="bundled preset configs")
    p_presets.add_argument("action", choices=["list"])

    args = parser.parse_args(argv)
    out_dir = args.out or os.environ.get("TMSDYN_OUT") or os.getcwd()
    os.makedirs(out_dir, exist_ok=True)

    if args.command == "validate":
        results = run_all(verbose=True)
        return 0 if all(r.passed for r in results) else 1

    if args.command == "presets":
        for name in preset_names():
            print(name)
        return 0

    if os.path.exists(args.config):
        with open(args.config) as fh:
            config = json.load(fh)
    elif args.config in preset_names():
        config = load_preset(args.config)
    else:
        print(f"error: config {args.config!r} not found", file=sys.stderr)
        return 2

    try:
        if args.command == "sweep":
            path = run_sweep(config, out_dir, threads=args.threads)
            print(f"sweep written to {path}")
            return 0
        parsed = parse_config(config)
        if parsed["mode"] == "validate":
            results = run_all(verbose=True)
            return 0 if all(r.passed for r in results) else 1
        if parsed["mode"] == "sweep":
            path = run_sweep(config, out_dir, threads=args.threads)
            print(f"sweep written to {path}")
            return 0
        report = run_scenario(parsed, out_dir)
        print(json.dumps(report, indent=2))
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
