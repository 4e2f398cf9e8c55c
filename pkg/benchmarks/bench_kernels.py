"""Benchmark the finite-volume step kernel: numba vs pure numpy.

Runs the canonical singular-shock scenario on a sequence of grids with
each kernel and reports wall time and cell-updates/second.

Usage:
    python benchmarks/bench_kernels.py [--cells 1000 4000 16000] [--t-end 0.5]
"""

import argparse
import time

import numpy as np

from singshock._kernels import _make_numba_kernel, _step_numpy
from singshock.engine import Scenario
from singshock.fv import Grid, _initial_fields
from singshock.states import State


def time_kernel(kernel, scenario, grid, t_end, cfl=0.45):
    u, v = _initial_fields(scenario.states, scenario.breakpoints,
                           scenario.deltas, grid)
    dx = grid.dx
    t = 0.0
    steps = 0
    start = time.perf_counter()
    while t < t_end:
        smax = max(float(np.max(np.abs(u - 1.0))),
                   float(np.max(np.abs(u + 1.0))), 2.5)
        dt = min(cfl * dx / smax, t_end - t)
        kernel(u, v, dt, dx)
        t += dt
        steps += 1
    elapsed = time.perf_counter() - start
    return elapsed, steps


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cells", type=int, nargs="+",
                    default=[1000, 4000, 16000])
    ap.add_argument("--t-end", type=float, default=0.5)
    args = ap.parse_args()

    scenario = Scenario((State(0.0, 0.0), State(-4.0, 6.0)),
                        (0.0,), (0.0,), args.t_end)
    kernels = [("numpy", _step_numpy)]
    nb = _make_numba_kernel()
    if nb is not None:
        # trigger JIT compilation outside the timed region
        warm = np.zeros(32), np.zeros(32)
        nb(warm[0], warm[1], 1e-3, 1e-2)
        kernels.append(("numba", nb))
    else:
        print("numba unavailable; benchmarking numpy only")

    print(f"{'kernel':8} {'cells':>8} {'steps':>7} {'time [s]':>10} "
          f"{'Mcell-updates/s':>16}")
    for n in args.cells:
        grid = Grid(-12.0, 4.0, n)
        for name, kernel in kernels:
            elapsed, steps = time_kernel(kernel, scenario, grid, args.t_end)
            rate = n * steps / elapsed / 1e6
            print(f"{name:8} {n:8d} {steps:7d} {elapsed:10.3f} {rate:16.1f}")


if __name__ == "__main__":
    main()
