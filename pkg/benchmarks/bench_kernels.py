"""Time the numba kernels against their pure Python / numpy references.

    python3 benchmarks/bench_kernels.py [--repeat N]

Compile time (first call) is reported separately from steady-state timings.
"""

import argparse
import time
import timeit

import numpy as np

from hshift import kernels
from hshift._accel import USE_NUMBA
from hshift.constants import default_constants


def best_of(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    c = default_constants()
    A, ge, gp = c.hyperfine_A_over_h, c.gamma_e, c.gamma_p
    # a long, tightly controlled integration: many accepted steps
    ode = (0.0, 2.0, 0.5, 200.0, 1e-12, 1e-3, 1e-18)

    cases = [
        ("breit_rabi_grid n=1e3", np.geomspace(1e-6, 30, 1_000)),
        ("breit_rabi_grid n=1e6", np.geomspace(1e-6, 30, 1_000_000)),
    ]

    print(f"numba active: {USE_NUMBA}")
    if USE_NUMBA:
        t0 = time.perf_counter()
        kernels.breit_rabi_grid(A, ge, gp, cases[0][1])
        t1 = time.perf_counter()
        kernels.integrate_affine(*ode)
        t2 = time.perf_counter()
        print(f"first call (compile or cache load): grid {t1 - t0:.3f} s, integrator {t2 - t1:.3f} s")

    print(f"{'kernel':<28}{'numpy':>12}{'python loop':>14}{'dispatched':>12}")
    for name, fields in cases:
        t_np = best_of(lambda: kernels.breit_rabi_grid_numpy(A, ge, gp, fields), args.repeat, 1)
        t_loop = best_of(lambda: kernels._breit_rabi_grid_loop(A, ge, gp, fields), 1, 1) if len(fields) <= 1e4 else None
        t_nb = best_of(lambda: kernels.breit_rabi_grid(A, ge, gp, fields), args.repeat, 1)
        loop = f"{t_loop * 1e3:11.3f}ms" if t_loop is not None else f"{'-':>13}"
        print(f"{name:<28}{t_np * 1e3:10.3f}ms {loop}{t_nb * 1e3:10.3f}ms")

    t, _, _ = kernels.integrate_affine_py(*ode)
    t_py = best_of(lambda: kernels.integrate_affine_py(*ode), args.repeat, 1)
    t_nb = best_of(lambda: kernels.integrate_affine(*ode), args.repeat, 1)
    label = f"integrate_affine {len(t)} steps"
    print(f"{label:<28}{'-':>12}{t_py * 1e3:12.3f}ms{t_nb * 1e3:10.3f}ms")


if __name__ == "__main__":
    main()
