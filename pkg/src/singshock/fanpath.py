"""Singular-shock paths through centered rarefaction fans.

While a singular shock crosses a fan, its right state slides along the
fan's rarefaction curve, so the path bends and the strength obeys

    x'(t)    = c(t) = [u^2 - v] / [u]        across the moving front
    beta'(t) = c(t) [v] - [u^3/3 - u]

with brackets taken between the fixed left state and the local fan state.
Integration is 4th-order Runge-Kutta with a fixed step; strength-vanish
and fan-exit events are located by bisection on the step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from . import curves
from .errors import DomainError, OutsideFan, OvercompressibilityLost, PoleError
from .states import State, flux, lambda1, lambda2
from .singular import shock_speed

DEFAULT_STEPS_PER_UNIT_TIME = 10_000
EVENT_TIME_TOL = 1e-10
_OC_TOL = 1e-7
_STALL_TOL = 0.05
_DEGENERATE_WIDTH = 1e-14


@dataclass(frozen=True)
class FanDescriptor:
    """A centered rarefaction fan: family, center and edge slopes.

    ``tail_state`` is the constant state adjacent to the slow (tail) edge;
    the fan profile is the rarefaction curve drawn from it.
    """

    family: int
    center_x: float
    center_t: float
    xi_tail: float
    xi_head: float

    tail_state: State

    def __post_init__(self):
        if self.family not in (1, 2):
            raise ValueError(f"family must be 1 or 2, got {self.family}")
        if self.xi_head < self.xi_tail - 1e-12:
            raise ValueError("xi_head < xi_tail")

    @property
    def head_state(self) -> State:
        return fan_state(self, self.xi_head)

    def xi_at(self, x: float, t: float) -> float:
        dt = t - self.center_t
        if dt <= 0:
            raise OutsideFan(f"t={t} not past the fan center t={self.center_t}")
        return (x - self.center_x) / dt


def fan_state(fd: FanDescriptor, xi: float, clamp: bool = False) -> State:
    """State carried by the ray of slope ``xi`` inside the fan."""
    if clamp:
        xi = min(max(xi, fd.xi_tail), fd.xi_head)
    elif not (fd.xi_tail - 1e-9 <= xi <= fd.xi_head + 1e-9):
        raise OutsideFan(
            f"xi={xi} outside [{fd.xi_tail}, {fd.xi_head}]"
        )
    if fd.family == 1:
        u = xi + 1.0
        v = curves.rarefaction_v(fd.tail_state, u, "R1")
    else:
        u = xi - 1.0
        v = curves.rarefaction_v(fd.tail_state, u, "R2")
    return State(u, v)


class PathEvent(Enum):
    VANISHED = "VANISHED"
    EXITED_FAN = "EXITED_FAN"
    OC_LEFT = "OC_LEFT"     # path speed rose to lambda1 of the left state
    OC_RIGHT = "OC_RIGHT"   # path speed fell to lambda2 of the fan state
    COMPLETED = "COMPLETED"


@dataclass(frozen=True)
class PathTrajectory:
    """Sampled (t, x, c, beta) along a singular shock's curved path."""

    t: np.ndarray
    x: np.ndarray
    c: np.ndarray
    beta: np.ndarray
    event: PathEvent
    exit_state: Optional[State] = None  # fan state at the terminal point

    @property
    def t_end(self) -> float:
        return float(self.t[-1])

    @property
    def x_end(self) -> float:
        return float(self.x[-1])

    @property
    def beta_end(self) -> float:
        return float(self.beta[-1])

    def x_at(self, t: float) -> float:
        return float(np.interp(t, self.t, self.x))

    def beta_at(self, t: float) -> float:
        return float(np.interp(t, self.t, self.beta))


def _rhs(left: State, fd: FanDescriptor, t: float, x: float):
    xi = fd.xi_at(x, t)
    q = fan_state(fd, xi, clamp=True)
    c = shock_speed(left, q)
    dbeta = c * (q.v - left.v) - (flux(q).f2 - flux(left).f2)
    return c, dbeta, q


def _rk4_step(left, fd, t, x, beta, h):
    c1, b1, _ = _rhs(left, fd, t, x)
    c2, b2, _ = _rhs(left, fd, t + h / 2, x + h / 2 * c1)
    c3, b3, _ = _rhs(left, fd, t + h / 2, x + h / 2 * c2)
    c4, b4, _ = _rhs(left, fd, t + h, x + h * c3)
    xn = x + h / 6 * (c1 + 2 * c2 + 2 * c3 + c4)
    bn = beta + h / 6 * (b1 + 2 * b2 + 2 * b3 + b4)
    return xn, bn


def integrate_path(
    left: State,
    fd: FanDescriptor,
    start: tuple[float, float],
    zeta: float,
    t_end: float,
    steps_per_unit_time: int = DEFAULT_STEPS_PER_UNIT_TIME,
    check_overcompressive: bool = True,
) -> PathTrajectory:
    """Integrate the curved path of a singular shock through a fan.

    ``start`` is the entry point (X, T) on the fan's tail edge; ``zeta``
    the strength there.  Integration stops at the first of: strength
    reaching zero (VANISHED), the path reaching the head edge
    (EXITED_FAN), the path speed meeting a bounding characteristic speed
    (OC_LEFT / OC_RIGHT, the regime switch into composite solutions), or
    ``t_end`` (COMPLETED).
    """
    X, T = start
    if zeta < 0:
        raise ValueError("zeta must be nonnegative")
    if t_end <= T:
        raise ValueError("t_end must exceed the start time")

    degenerate = fd.xi_head - fd.xi_tail <= _DEGENERATE_WIDTH

    h = 1.0 / steps_per_unit_time
    ts = [T]
    xs = [X]
    bs = [zeta]
    c0, _, q0 = _rhs(left, fd, T, X)
    cs = [c0]
    if check_overcompressive and (lambda2(q0) > c0 + _OC_TOL
                                  or c0 > lambda1(left) + _OC_TOL):
        raise OvercompressibilityLost(
            f"entry not overcompressive: c={c0}, "
            f"lambda1(left)={lambda1(left)}, lambda2(entry)={lambda2(q0)}"
        )

    t, x, beta = T, X, zeta
    event = PathEvent.COMPLETED
    exit_state: Optional[State] = None

    lam1_left = lambda1(left)

    def crossed(t2, x2, b2):
        """Terminal-event kind at the candidate step endpoint, or None."""
        if b2 < 0.0:
            return "vanish"
        if degenerate:
            return None
        xi2 = fd.xi_at(x2, t2)
        if xi2 >= fd.xi_head or xi2 < fd.xi_tail - 1e-12:
            return "exit"
        if check_overcompressive:
            c2, _, q2 = _rhs(left, fd, t2, x2)
            if c2 > lam1_left + _OC_TOL:
                return "oc_left"
            # The path can only reach lambda2 of its own right state
            # asymptotically (the gap decays like 1/t), so the crossing
            # into the trailing-rarefaction regime is detected by a
            # stall margin rather than a sign change.
            if c2 - lambda2(q2) < _STALL_TOL:
                return "oc_right"
        return None

    while t < t_end - 1e-15:
        h_step = min(h, t_end - t)
        xn, bn = _rk4_step(left, fd, t, x, beta, h_step)
        tn = t + h_step
        kind = crossed(tn, xn, bn)
        if kind is not None:
            # bisect the step fraction down to the event time
            lo, hi = 0.0, h_step
            while hi - lo > EVENT_TIME_TOL:
                mid = (lo + hi) / 2
                xm, bm = _rk4_step(left, fd, t, x, beta, mid)
                if crossed(t + mid, xm, bm) is None:
                    lo = mid
                else:
                    hi = mid
            h_ev = hi
            xn, bn = _rk4_step(left, fd, t, x, beta, h_ev)
            tn = t + h_ev
            t, x, beta = tn, xn, max(bn, 0.0)
            cn, _, qn = _rhs(left, fd, t, x)
            ts.append(t); xs.append(x); bs.append(beta); cs.append(cn)
            event = {
                "vanish": PathEvent.VANISHED,
                "exit": PathEvent.EXITED_FAN,
                "oc_left": PathEvent.OC_LEFT,
                "oc_right": PathEvent.OC_RIGHT,
            }[kind]
            exit_state = qn
            break
        t, x, beta = tn, xn, bn
        cn, _, qn = _rhs(left, fd, t, x)
        ts.append(t); xs.append(x); bs.append(beta); cs.append(cn)
        if event is PathEvent.COMPLETED:
            exit_state = qn

    return PathTrajectory(
        t=np.asarray(ts), x=np.asarray(xs), c=np.asarray(cs),
        beta=np.asarray(bs), event=event, exit_state=exit_state,
    )


def closed_form_c(
    left_pair: tuple[State, State], T: float, t: float
) -> float:
    """Legacy closed-form expression for the path speed, diagnostic only.

    The ODE integration above is the ground truth; this expression is kept
    for side-by-side comparison.  Raises :class:`PoleError` at u0 = 1.
    """
    s0, s1 = left_pair
    u0, v0 = s0.u, s0.v
    u1, v1 = s1.u, s1.v
    denom = 2.0 * (u0 - 1.0)
    if abs(denom) < 1e-14:
        raise PoleError("path-speed expression has a pole at u0 = 1")
    term_t = t * (1.0 - 2.0 * (u1 - v0 + v1 + u0 * u0 - u1 * u1))
    term_T = T * (1.0 - 2.0 * (u0 - v1 - u0 * u1 + u0 * u0 - u1 * u1))
    return (term_t + term_T) / denom
