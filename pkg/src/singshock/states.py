"""Phase-space states, fluxes and characteristic speeds.

The model is the 2x2 system

    u_t + (u^2 - v)_x   = 0
    v_t + (u^3/3 - u)_x = 0

with dimensionless scalar fields u and v.  Everything in this module is an
exact polynomial evaluation; jump brackets use the right-minus-left
convention throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class State:
    """A point (u, v) in phase space."""

    u: float
    v: float

    def __post_init__(self):
        if not (math.isfinite(self.u) and math.isfinite(self.v)):
            raise ValueError(f"non-finite state ({self.u}, {self.v})")

    def close_to(self, other: "State", tol: float = 1e-10) -> bool:
        return abs(self.u - other.u) <= tol and abs(self.v - other.v) <= tol


@dataclass(frozen=True)
class Flux:
    """Flux vector (u^2 - v, u^3/3 - u) of a state."""

    f1: float
    f2: float


@dataclass(frozen=True)
class DeltaState:
    """A state carrying a point delta of strength zeta in the v component."""

    state: State
    zeta: float

    def __post_init__(self):
        if self.zeta < 0:
            raise ValueError(f"delta strength must be nonnegative, got {self.zeta}")


def flux(s: State) -> Flux:
    """Evaluate the flux vector at a state."""
    return Flux(s.u * s.u - s.v, s.u ** 3 / 3.0 - s.u)


def eigenvalues(s: State) -> tuple[float, float]:
    """Characteristic speeds (u - 1, u + 1) of the flux Jacobian."""
    return (s.u - 1.0, s.u + 1.0)


def lambda1(s: State) -> float:
    return s.u - 1.0


def lambda2(s: State) -> float:
    return s.u + 1.0


def jump(q_left: float, q_right: float) -> float:
    """Jump bracket [q] = q_right - q_left."""
    return q_right - q_left
