"""Independent finite-volume oracle (Lax-Friedrichs).

Used to corroborate analytic wave speeds and delta-mass growth rates: the
concentrating v-mass at a singular shock shows up as a growing spike whose
excess over the background matches the strength law beta(t) = zeta + k t.
First-order LF is chosen for robustness in the presence of forming deltas;
accuracy comes from mesh refinement, not scheme order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ._kernels import KERNEL_NAME, step_kernel
from .errors import BlowUp, NoFront, WindowClipped
from .states import State

DEFAULT_CFL = 0.45
DEFAULT_WINDOW_HALFWIDTH_CELLS = 40


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    n: int
    cfl: float = DEFAULT_CFL

    def __post_init__(self):
        if self.n < 16:
            raise ValueError("need at least 16 cells")
        if not 0.0 < self.cfl < 1.0:
            raise ValueError("CFL must lie in (0, 1)")
        if not self.x_max > self.x_min:
            raise ValueError("empty domain")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n

    @property
    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n) + 0.5) * self.dx


@dataclass
class FieldSnapshot:
    """Cell averages at one time, plus the running conservation audit.

    ``boundary_net`` holds the time-integrated interface fluxes through the
    two domain boundaries (per component); ``initial_total`` the domain
    totals at t=0.  Totals may only change by the boundary net.
    """

    t: float
    x: np.ndarray
    u: np.ndarray
    v: np.ndarray
    dx: float
    initial_total: np.ndarray = field(default_factory=lambda: np.zeros(2))
    boundary_net: np.ndarray = field(default_factory=lambda: np.zeros(2))

    def totals(self) -> np.ndarray:
        return np.array([self.u.sum() * self.dx, self.v.sum() * self.dx])

    def conservation_residual(self) -> float:
        """Relative defect in (totals change) = -(net outflow)."""
        defect = self.totals() - self.initial_total + self.boundary_net
        scale = max(1.0, float(np.abs(self.initial_total).max()),
                    float(np.abs(self.boundary_net).max()))
        return float(np.abs(defect).max()) / scale


def _initial_fields(states: Sequence[State], breakpoints: Sequence[float],
                    deltas: Sequence[float], grid: Grid):
    x = grid.centers
    u = np.full(grid.n, states[0].u, dtype=np.float64)
    v = np.full(grid.n, states[0].v, dtype=np.float64)
    for b, s in zip(breakpoints, states[1:]):
        mask = x > b
        u[mask] = s.u
        v[mask] = s.v
    if deltas:
        for b, z in zip(breakpoints, deltas):
            if z > 0:
                i = int(np.clip((b - grid.x_min) / grid.dx, 0, grid.n - 1))
                v[i] += z / grid.dx
    return u, v


def run(initial, grid: Grid, t_end: float,
        snapshot_times: Optional[Sequence[float]] = None,
        singular_speed: Optional[float] = None) -> list[FieldSnapshot]:
    """Evolve scenario data to ``t_end``, returning requested snapshots.

    ``initial`` is an :class:`singshock.engine.Scenario` (or anything with
    ``states``, ``breakpoints``, ``deltas``).  The time step is CFL-limited
    against the largest characteristic speed on the grid each step;
    ``singular_speed``, when known analytically, is folded into the limit
    as a safety margin for the concentrating spike.
    """
    if not t_end > 0:
        raise ValueError("t_end must be positive")
    if snapshot_times is None:
        snapshot_times = [t_end]
    snapshot_times = sorted(float(t) for t in snapshot_times)
    if snapshot_times[-1] > t_end + 1e-12:
        raise ValueError("snapshot time beyond t_end")

    u, v = _initial_fields(initial.states, initial.breakpoints,
                           getattr(initial, "deltas", ()), grid)
    dx = grid.dx
    initial_total = np.array([u.sum() * dx, v.sum() * dx])
    boundary_net = np.zeros(2)

    snaps: list[FieldSnapshot] = []
    t = 0.0
    next_i = 0
    extra = abs(singular_speed) if singular_speed is not None else 0.0

    def emit(t):
        snaps.append(FieldSnapshot(
            t=t, x=grid.centers, u=u.copy(), v=v.copy(), dx=dx,
            initial_total=initial_total.copy(),
            boundary_net=boundary_net.copy()))

    while next_i < len(snapshot_times) and snapshot_times[next_i] <= 1e-15:
        emit(0.0)
        next_i += 1

    while next_i < len(snapshot_times):
        smax = max(float(np.max(np.abs(u - 1.0))),
                   float(np.max(np.abs(u + 1.0))), extra, 1e-12)
        dt = grid.cfl * dx / smax
        dt = min(dt, snapshot_times[next_i] - t)
        bl1, bl2, br1, br2 = step_kernel(u, v, dt, dx)
        # net outflow through the two boundaries this step
        boundary_net[0] += dt * (br1 - bl1)
        boundary_net[1] += dt * (br2 - bl2)
        t += dt
        if not (np.isfinite(u).all() and np.isfinite(v).all()):
            raise BlowUp(f"non-finite cell values at t={t}")
        while (next_i < len(snapshot_times)
               and t >= snapshot_times[next_i] - 1e-12):
            emit(snapshot_times[next_i])
            next_i += 1
    return snaps


def measure_shock_position(snap: FieldSnapshot) -> float:
    """Front position: largest adjacent |du| interface, refined by the
    centroid of the local v-excess."""
    du = np.abs(np.diff(snap.u))
    i = int(np.argmax(du))
    if du[i] < 1e-6:
        raise NoFront("no jump above 1e-6 in u")
    x_if = 0.5 * (snap.x[i] + snap.x[i + 1])
    half = 10
    lo = max(i - half, 0)
    hi = min(i + 1 + half, len(snap.x) - 1)
    xs = snap.x[lo:hi + 1]
    vs = snap.v[lo:hi + 1]
    bg = np.linspace(vs[0], vs[-1], len(vs))
    w = np.maximum(vs - bg, 0.0)
    total = w.sum()
    if total < 1e-12:
        return float(x_if)
    return float((xs * w).sum() / total)


def measure_delta_mass(snap: FieldSnapshot,
                       window_halfwidth: Optional[float] = None) -> float:
    """Excess v-mass around the front: integral of v over the window minus
    the piecewise-constant background read just outside it."""
    x_hat = measure_shock_position(snap)
    if window_halfwidth is None:
        window_halfwidth = DEFAULT_WINDOW_HALFWIDTH_CELLS * snap.dx
    x_lo = x_hat - window_halfwidth
    x_hi = x_hat + window_halfwidth
    if x_lo <= snap.x[0] or x_hi >= snap.x[-1]:
        raise WindowClipped(
            f"window [{x_lo}, {x_hi}] exits domain "
            f"[{snap.x[0]}, {snap.x[-1]}]")
    inside = (snap.x >= x_lo) & (snap.x <= x_hi)
    idx = np.nonzero(inside)[0]
    u_left = snap.u[idx[0] - 1]
    u_right = snap.u[idx[-1] + 1]
    v_left = snap.v[idx[0] - 1]
    v_right = snap.v[idx[-1] + 1]
    x_lo = snap.x[idx[0]] - 0.5 * snap.dx
    x_hi = snap.x[idx[-1]] + 0.5 * snap.dx
    mass_u = snap.u[inside].sum() * snap.dx
    mass_v = snap.v[inside].sum() * snap.dx
    # u carries no delta, so the u-conserving step position is an unbiased
    # split point for the background contribution to the v integral
    if abs(u_left - u_right) > 1e-12:
        x_s = (mass_u - u_right * x_hi + u_left * x_lo) / (u_left - u_right)
        x_s = min(max(x_s, x_lo), x_hi)
    else:
        x_s = x_hat
    background = v_left * (x_s - x_lo) + v_right * (x_hi - x_s)
    return float(mass_v - background)


__all__ = [
    "Grid", "FieldSnapshot", "run", "measure_shock_position",
    "measure_delta_mass", "KERNEL_NAME", "DEFAULT_CFL",
    "DEFAULT_WINDOW_HALFWIDTH_CELLS",
]
