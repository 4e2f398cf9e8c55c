"""Exact Riemann solver for the ion-acoustic system.

Classical data are solved by intersecting the forward 1-wave curve from the
left state with the backward 2-wave curve into the right state, root-finding
on the middle-state abscissa.  Right states inside the singular locus get a
single overcompressive singular shock; right states beyond it get composite
rarefaction + singular solutions with the intermediate state chosen so the
wave speeds match at the shared edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import brentq

from . import curves
from .curves import Region, SQRT12
from .errors import (
    NoClassicalSolution,
    OutsideSDSL,
    Unresolvable,
)
from .singular import SingularShock, make_singular_shock
from .states import DeltaState, State, lambda1, lambda2

_DEGENERATE_U = 1e-11
_ROOT_XTOL = 1e-13
_MAX_ITER = 200


@dataclass(frozen=True)
class Shock:
    family: int
    left: State
    right: State
    speed: float

    def lax_admissible(self, tol: float = 1e-9) -> bool:
        lam_l = lambda1(self.left) if self.family == 1 else lambda2(self.left)
        lam_r = lambda1(self.right) if self.family == 1 else lambda2(self.right)
        if not (lam_l >= self.speed - tol and self.speed >= lam_r - tol):
            return False
        # the opposite family must cross, not impinge
        if self.family == 1:
            return self.speed <= lambda2(self.right) + tol
        return self.speed >= lambda1(self.left) - tol


@dataclass(frozen=True)
class Rarefaction:
    family: int
    left: State
    right: State
    speed_tail: float
    speed_head: float


Wave = Union[Shock, Rarefaction, SingularShock]


def wave_speed_range(w: Wave) -> tuple[float, float]:
    if isinstance(w, Rarefaction):
        return (w.speed_tail, w.speed_head)
    return (w.speed, w.speed)


def wave_left_state(w: Wave) -> State:
    return w.left


def wave_right_state(w: Wave) -> State:
    return w.right


@dataclass(frozen=True)
class WaveFan:
    left: State
    right: State
    waves: tuple[Wave, ...]

    def validate(self, tol: float = 1e-10) -> None:
        """Check state matching, speed ordering and admissibility."""
        prev = self.left
        prev_head = -math.inf
        for w in self.waves:
            if not wave_left_state(w).close_to(prev, 1e-8):
                raise AssertionError(f"state mismatch entering {w}")
            tail, head = wave_speed_range(w)
            if tail < prev_head - tol:
                raise AssertionError(
                    f"wave ordering violated: {tail} < {prev_head}"
                )
            if isinstance(w, Shock) and not w.lax_admissible():
                raise AssertionError(f"inadmissible shock {w}")
            if isinstance(w, SingularShock) and not w.overcompressive():
                raise AssertionError(f"non-overcompressive singular shock {w}")
            prev = wave_right_state(w)
            prev_head = head
        if not prev.close_to(self.right, 1e-8):
            raise AssertionError("fan does not reach the right state")


def _forward_one_wave_v(left: State, u_m: float) -> float:
    """v along the forward 1-wave curve (shock below u0, rarefaction above)."""
    if u_m >= left.u:
        return curves.rarefaction_v(left, u_m, "R1")
    return curves.hugoniot_v(left, u_m, "plus")


def _backward_two_wave_v(right: State, u_m: float) -> float:
    """v of the middle state whose forward 2-wave reaches ``right``."""
    if right.u >= u_m:
        # rarefaction: invert the forward R2 relation
        return (
            right.v
            + u_m * u_m / 2.0
            - right.u * right.u / 2.0
            + right.u
            - u_m
        )
    # 2-shock from the middle state down to right.u, minus branch
    w = right.u - u_m
    root = math.sqrt(max(1.0 - w * w / 12.0, 0.0))
    return right.v - w * ((u_m + right.u) / 2.0 - root)


def _make_one_wave(left: State, m: State) -> Wave | None:
    if abs(m.u - left.u) < _DEGENERATE_U:
        return None
    if m.u > left.u:
        return Rarefaction(1, left, m, lambda1(left), lambda1(m))
    return Shock(1, left, m, curves.hugoniot_speed(left, m.u, "plus"))


def _make_two_wave(m: State, right: State) -> Wave | None:
    if abs(right.u - m.u) < _DEGENERATE_U:
        return None
    if right.u > m.u:
        return Rarefaction(2, m, right, lambda2(m), lambda2(right))
    return Shock(2, m, right, curves.hugoniot_speed(m, right.u, "minus"))


def solve_classical(left: State, right: State) -> WaveFan:
    """Two-wave solution by wave-curve intersection.

    Raises :class:`NoClassicalSolution` when no admissible middle state
    exists (e.g. the right state is inside the singular locus).
    """
    if left.close_to(right, 1e-13):
        return WaveFan(left, right, ())

    lo = left.u - SQRT12 + 1e-9
    hi = right.u + SQRT12 - 1e-9
    if hi <= lo:
        raise NoClassicalSolution(
            f"u-gap too wide for classical waves: {left} -> {right}"
        )

    def residual(u_m: float) -> float:
        return _forward_one_wave_v(left, u_m) - _backward_two_wave_v(right, u_m)

    grid = np.linspace(lo, hi, 512)
    vals = np.array([residual(u) for u in grid])
    candidates: list[float] = []
    for i in range(len(grid) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            candidates.append(grid[i])
        elif a * b < 0.0:
            candidates.append(
                brentq(residual, grid[i], grid[i + 1], xtol=_ROOT_XTOL,
                       maxiter=_MAX_ITER)
            )
    if vals[-1] == 0.0:
        candidates.append(grid[-1])

    scale = max(1.0, abs(left.v), abs(right.v))
    for u_m in candidates:
        v_m = _forward_one_wave_v(left, u_m)
        if abs(v_m - _backward_two_wave_v(right, u_m)) > 1e-10 * scale:
            continue
        m = State(u_m, v_m)
        waves = tuple(
            w for w in (_make_one_wave(left, m), _make_two_wave(m, right))
            if w is not None
        )
        fan = WaveFan(left, right, waves)
        try:
            fan.validate()
        except AssertionError:
            continue
        return fan
    raise NoClassicalSolution(f"no admissible middle state for {left} -> {right}")


def _expand_bracket(f, a: float, direction: float, limit: float):
    """Walk from ``a`` in ``direction`` until f changes sign; return bracket."""
    fa = f(a)
    step = 0.25
    x = a
    while abs(x - a) < limit:
        x_next = x + direction * step
        fx = f(x_next)
        if fa * fx <= 0.0:
            return (x, x_next) if x < x_next else (x_next, x)
        x = x_next
        step *= 1.7
    raise Unresolvable("no sign change while expanding bracket")


def rarefaction_then_singular(
    left: State, right: State, zeta: float = 0.0,
    birth_x: float = 0.0, birth_t: float = 0.0,
) -> WaveFan:
    """1-rarefaction to an intermediate state, then a singular shock.

    The intermediate state m lies on the forward 1-rarefaction curve of
    ``left`` and is fixed by speed continuity at the shared edge: the
    singular shock's speed equals the fan's head speed, i.e. ``right`` lies
    on the curve D of m.
    """

    def g(u_m: float) -> float:
        v_m = curves.rarefaction_v(left, u_m, "R1")
        return curves.curve_D_v(State(u_m, v_m), right.u) - right.v

    if g(left.u) > 0.0:
        raise Unresolvable("right state not above the curve D of the left state")
    a, b = _expand_bracket(g, left.u, +1.0, 1e3)
    u_m = brentq(g, a, b, xtol=_ROOT_XTOL, maxiter=_MAX_ITER)
    m = State(u_m, curves.rarefaction_v(left, u_m, "R1"))
    ss = make_singular_shock(m, right, zeta0=zeta, birth_x=birth_x, birth_t=birth_t)
    waves: list[Wave] = []
    if u_m > left.u + _DEGENERATE_U:
        waves.append(Rarefaction(1, left, m, lambda1(left), lambda1(m)))
    waves.append(ss)
    return WaveFan(left, right, tuple(waves))


def singular_then_rarefaction(
    left: State, right: State, zeta: float = 0.0,
    birth_x: float = 0.0, birth_t: float = 0.0,
) -> WaveFan:
    """Singular shock to an intermediate state, then a 2-rarefaction.

    The intermediate state m lies on the curve E of ``left`` (speed equals
    the fan's tail speed) and on the 2-rarefaction curve through ``right``.
    """

    def h(u_m: float) -> float:
        m = State(u_m, curves.curve_E_v(left, u_m))
        return curves.rarefaction_v(m, right.u, "R2") - right.v

    if h(left.u) < 0.0:
        raise Unresolvable("right state not below the curve E of the left state")
    a, b = _expand_bracket(h, left.u, -1.0, 1e3)
    u_m = brentq(h, a, b, xtol=_ROOT_XTOL, maxiter=_MAX_ITER)
    m = State(u_m, curves.curve_E_v(left, u_m))
    ss = make_singular_shock(left, m, zeta0=zeta, birth_x=birth_x, birth_t=birth_t)
    waves: list[Wave] = [ss]
    if right.u > u_m + _DEGENERATE_U:
        waves.append(Rarefaction(2, m, right, lambda2(m), lambda2(right)))
    return WaveFan(left, right, tuple(waves))


def solve(left: State, right: State,
          birth_x: float = 0.0, birth_t: float = 0.0) -> WaveFan:
    """Solve the plain Riemann problem, dispatching on the region of the
    right state."""
    cls = curves.classify(left, right)
    region = cls.region
    if region in (Region.Q7, Region.ON_J1):
        ss = make_singular_shock(left, right, zeta0=0.0,
                                 birth_x=birth_x, birth_t=birth_t)
        return WaveFan(left, right, (ss,))
    if region is Region.ABOVE_D:
        return rarefaction_then_singular(left, right, 0.0, birth_x, birth_t)
    if region is Region.BELOW_E:
        return singular_then_rarefaction(left, right, 0.0, birth_x, birth_t)
    return solve_classical(left, right)


def solve_with_delta(left: State, right: DeltaState,
                     birth_x: float = 0.0, birth_t: float = 0.0) -> WaveFan:
    """Solve Riemann data whose right state carries a point delta.

    A single singular shock of initial strength ``right.zeta`` exists
    exactly when the state lies inside the full singular locus; its
    strength may decay (k < 0)."""
    if right.zeta <= 0.0:
        raise ValueError("delta data require zeta > 0; use solve() otherwise")
    if not curves.in_sdsl(left, right.state):
        raise OutsideSDSL(
            f"{right.state} not in the singular locus of {left}"
        )
    ss = make_singular_shock(left, right.state, zeta0=right.zeta,
                             birth_x=birth_x, birth_t=birth_t)
    return WaveFan(left, right.state, (ss,))
