#!/usr/bin/env python3
"""Benchmark the integration kernels with and without numba.

Spawns one subprocess per mode so each one imports the kernels fresh with
the TMSDYN_DISABLE_JIT flag set accordingly.

Usage: python benchmarks/benchmark_integrator.py [repeats]
"""

import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, time
import tmsdyn
from tmsdyn.kernels import JIT_ENABLED
from tmsdyn.ode import IntegratorConfig, integrate
from tmsdyn.pulses import GaussianQuadraticPulse

pulse = GaussianQuadraticPulse(lam=1.0, eta0=1.0)
cfg_rk45 = IntegratorConfig(rel_tol=1e-10, abs_tol=1e-12, max_step=0.1)
cfg_rk4 = IntegratorConfig(method="rk4", step=1e-3, sample_stride=100)

# warm-up (includes JIT compilation when enabled)
integrate(pulse, 0.1, 10.0, cfg_rk45)
integrate(pulse, 0.1, 10.0, cfg_rk4)

repeats = int(%(repeats)d)
t0 = time.perf_counter()
for _ in range(repeats):
    integrate(pulse, 0.1, 200.0, cfg_rk45)
t_rk45 = (time.perf_counter() - t0) / repeats

t0 = time.perf_counter()
for _ in range(repeats):
    integrate(pulse, 0.1, 200.0, cfg_rk4)
t_rk4 = (time.perf_counter() - t0) / repeats

print(json.dumps({"jit": JIT_ENABLED, "rk45_s": t_rk45, "rk4_s": t_rk4}))
"""


def run_mode(disable_jit: bool, repeats: int) -> dict:
    env = dict(os.environ, TMSDYN_DISABLE_JIT="1" if disable_jit else "0")
    out = subprocess.run([sys.executable, "-c", WORKLOAD % {"repeats": repeats}],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    jit = run_mode(False, repeats)
    plain = run_mode(True, repeats)
    print(f"{'kernel':<10} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    for key, label in (("rk45_s", "rk45"), ("rk4_s", "rk4")):
        ratio = plain[key] / jit[key]
        print(f"{label:<10} {jit[key]:>11.4f}s {plain[key]:>11.4f}s {ratio:>8.1f}x")


if __name__ == "__main__":
    main()
