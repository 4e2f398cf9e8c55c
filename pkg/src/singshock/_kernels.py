"""Lax-Friedrichs step kernels.

Two interchangeable implementations of the hot loop: a numba-compiled one
and a pure-numpy one.  Selection: set ``SINGSHOCK_PURE_NUMPY=1`` to force
the numpy path; otherwise numba is used when importable.  Both produce
bit-identical updates (same arithmetic order per cell).

The step is the classic flux-form LF update

    F_{i+1/2} = (f(q_i) + f(q_{i+1}))/2 - (dx/dt)(q_{i+1} - q_i)/2
    q_i      <- q_i - (dt/dx)(F_{i+1/2} - F_{i-1/2})

with outflow (copy) ghost cells, so the boundary interface fluxes are
exactly f(edge cell); the kernel returns them for the conservation audit.
"""

from __future__ import annotations

import os

import numpy as np


def _step_numpy(u, v, dt, dx):
    """One LF step in place. Returns (f1_left, f2_left, f1_right, f2_right),
    the boundary interface fluxes."""
    f1 = u * u - v
    f2 = u * u * u / 3.0 - u
    lam = dx / dt
    # interior interface fluxes i+1/2 for i = 0..N-2
    g1 = 0.5 * (f1[:-1] + f1[1:]) - 0.5 * lam * (u[1:] - u[:-1])
    g2 = 0.5 * (f2[:-1] + f2[1:]) - 0.5 * lam * (v[1:] - v[:-1])
    bl1, bl2 = f1[0], f2[0]      # ghost copy => LF flux reduces to f(edge)
    br1, br2 = f1[-1], f2[-1]
    r = dt / dx
    u[1:-1] -= r * (g1[1:] - g1[:-1])
    v[1:-1] -= r * (g2[1:] - g2[:-1])
    u[0] -= r * (g1[0] - bl1)
    v[0] -= r * (g2[0] - bl2)
    u[-1] -= r * (br1 - g1[-1])
    v[-1] -= r * (br2 - g2[-1])
    return bl1, bl2, br1, br2


def _make_numba_kernel():
    import numba

    @numba.njit(cache=True)
    def _step_numba(u, v, dt, dx):
        n = u.shape[0]
        f1 = np.empty(n)
        f2 = np.empty(n)
        for i in range(n):
            f1[i] = u[i] * u[i] - v[i]
            f2[i] = u[i] * u[i] * u[i] / 3.0 - u[i]
        lam = dx / dt
        g1 = np.empty(n - 1)
        g2 = np.empty(n - 1)
        for i in range(n - 1):
            g1[i] = 0.5 * (f1[i] + f1[i + 1]) - 0.5 * lam * (u[i + 1] - u[i])
            g2[i] = 0.5 * (f2[i] + f2[i + 1]) - 0.5 * lam * (v[i + 1] - v[i])
        bl1, bl2 = f1[0], f2[0]
        br1, br2 = f1[n - 1], f2[n - 1]
        r = dt / dx
        un = np.empty(n)
        vn = np.empty(n)
        un[0] = u[0] - r * (g1[0] - bl1)
        vn[0] = v[0] - r * (g2[0] - bl2)
        for i in range(1, n - 1):
            un[i] = u[i] - r * (g1[i] - g1[i - 1])
            vn[i] = v[i] - r * (g2[i] - g2[i - 1])
        un[n - 1] = u[n - 1] - r * (br1 - g1[n - 2])
        vn[n - 1] = v[n - 1] - r * (br2 - g2[n - 2])
        u[:] = un
        v[:] = vn
        return bl1, bl2, br1, br2

    return _step_numba


def select_step_kernel():
    """Return (kernel, name) honoring SINGSHOCK_PURE_NUMPY."""
    if os.environ.get("SINGSHOCK_PURE_NUMPY", "") not in ("", "0"):
        return _step_numpy, "numpy"
    try:
        return _make_numba_kernel(), "numba"
    except ImportError:
        return _step_numpy, "numpy"


step_kernel, KERNEL_NAME = select_step_kernel()
