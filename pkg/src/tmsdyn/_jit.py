"""JIT selection layer.

The integration kernels are compiled with numba unless the environment
variable ``TMSDYN_DISABLE_JIT=1`` is set, in which case the same functions
run as plain Python/numpy. ``benchmarks/benchmark_integrator.py`` compares
the two paths.
"""

import os

JIT_ENABLED = os.environ.get("TMSDYN_DISABLE_JIT", "0") != "1"

if JIT_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        JIT_ENABLED = False

if not JIT_ENABLED:
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap
