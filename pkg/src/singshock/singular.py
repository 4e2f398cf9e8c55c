"""Singular-shock algebra: speed, strength growth, split weights.

A singular shock carries a delta measure of strength ``beta(t)`` in the v
component along its trajectory.  For a straight path the strength is linear,
``beta(t) = zeta0 + k (t - T)``, where ``k`` is the rate at which the second
jump condition fails:

    k = c [v] - [u^3/3 - u]          (brackets are right minus left)

The delta in u is split across the front with weights ``alpha0^2 = a0 beta``
and ``alpha1^2 = a1 beta`` satisfying ``a0 + a1 = 1`` and
``u1 a0 + u0 a1 = c``; both weights are nonnegative exactly when the speed
lies between ``u1`` and ``u0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DegenerateJump, NegativeStrength, NotRepresentable
from .states import State, flux, jump, lambda1, lambda2

_U_JUMP_FLOOR = 1e-14


def shock_speed(left: State, right: State) -> float:
    """Jump speed c = [u^2 - v] / [u]; same formula for classical and
    singular shocks."""
    du = jump(left.u, right.u)
    if abs(du) < _U_JUMP_FLOOR:
        raise DegenerateJump(f"u-jump {du} below {_U_JUMP_FLOOR}")
    return jump(flux(left).f1, flux(right).f1) / du


def growth_rate(left: State, right: State) -> float:
    """Strength growth rate k = c [v] - [u^3/3 - u].

    Positive on the interior of the zero-strength singular locus, zero on
    the Hugoniot locus (where the classical jump conditions hold in both
    components), negative on the decaying-strength bands.
    """
    c = shock_speed(left, right)
    return c * jump(left.v, right.v) - jump(flux(left).f2, flux(right).f2)


def alpha_split(left: State, right: State, c: float) -> tuple[float, float]:
    """Per-strength delta weights (a0, a1) in the u component.

    Solves ``a0 + a1 = 1``, ``u1 a0 + u0 a1 = c`` for the split of the
    delta across the front.  Requires ``u0 > u1`` and ``u1 <= c <= u0``.
    """
    u0, u1 = left.u, right.u
    if not u0 > u1:
        raise NotRepresentable(f"requires u0 > u1, got u0={u0}, u1={u1}")
    a0 = (u0 - c) / (u0 - u1)
    a1 = (c - u1) / (u0 - u1)
    if a0 < -1e-12 or a1 < -1e-12:
        raise NotRepresentable(f"speed {c} outside [{u1}, {u0}]")
    return (max(a0, 0.0), max(a1, 0.0))


def is_overcompressive(left: State, right: State, c: float,
                       tol: float = 1e-9) -> bool:
    """Both characteristic families impinge on the wave:
    lambda1(left) >= c >= lambda2(right), boundaries included.

    A small tolerance keeps edge-matched composite constructions (speed
    equal to an adjacent characteristic) on the admissible side."""
    return lambda1(left) >= c - tol and c >= lambda2(right) - tol


@dataclass(frozen=True)
class SingularShock:
    """A delta-carrying discontinuity with linear strength law."""

    left: State
    right: State
    speed: float
    zeta0: float
    k: float
    birth_x: float = 0.0
    birth_t: float = 0.0
    alpha0_sq_per_beta: float = 0.0
    alpha1_sq_per_beta: float = 0.0

    def strength_at(self, t: float) -> float:
        """beta(t) = zeta0 + k (t - T) for t at or after birth."""
        if t < self.birth_t - 1e-12:
            raise ValueError(f"t={t} precedes birth time {self.birth_t}")
        beta = self.zeta0 + self.k * (t - self.birth_t)
        if beta < -1e-12:
            raise NegativeStrength(f"beta({t}) = {beta} < 0")
        return max(beta, 0.0)

    def vanish_time(self) -> Optional[float]:
        """Time at which the strength reaches zero, if it decays."""
        if self.k >= 0:
            return None
        return self.birth_t - self.zeta0 / self.k

    def position_at(self, t: float) -> float:
        return self.birth_x + self.speed * (t - self.birth_t)

    def overcompressive(self) -> bool:
        return is_overcompressive(self.left, self.right, self.speed)


def make_singular_shock(
    left: State,
    right: State,
    zeta0: float = 0.0,
    birth_x: float = 0.0,
    birth_t: float = 0.0,
) -> SingularShock:
    """Assemble a singular shock from its end states.

    Speed, growth rate and split weights are functions of the two states
    only; the initial strength just offsets the linear law.
    """
    c = shock_speed(left, right)
    k = growth_rate(left, right)
    a0, a1 = alpha_split(left, right, c)
    return SingularShock(
        left=left,
        right=right,
        speed=c,
        zeta0=zeta0,
        k=k,
        birth_x=birth_x,
        birth_t=birth_t,
        alpha0_sq_per_beta=a0,
        alpha1_sq_per_beta=a1,
    )


def strength_at(ss: SingularShock, t: float) -> float:
    return ss.strength_at(t)


def vanish_time(ss: SingularShock) -> Optional[float]:
    return ss.vanish_time()
