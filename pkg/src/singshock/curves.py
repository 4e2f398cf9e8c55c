"""Wave curves and region classification in the (u, v) phase plane.

All curves are taken relative to a base (left) state ``(u0, v0)``:

* ``S1``/``S2`` -- the two branches of the Hugoniot locus, defined for
  ``|u - u0| <= sqrt(12)``.  ``S1`` is the plus branch (the lower curve for
  ``u < u0``), ``S2`` the minus branch.
* ``R1``/``R2`` -- rarefaction curves.  They are level sets of the Riemann
  invariants ``v - u^2/2 - u`` and ``v - u^2/2 + u``, so the set of left
  states whose forward rarefaction reaches a given right state is the same
  curve drawn through that right state (the "inverse" curves).
* ``D``/``E`` -- the loci where a jump's speed equals the left state's slow
  characteristic (``D``) or the right state's fast characteristic (``E``).
  Between them a singular shock is overcompressive.

``classify`` places a right state into one of the regions used by the
Riemann solver and the interaction engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .states import State

SQRT12 = math.sqrt(12.0)

# Relative tolerance for region-boundary membership.
BOUNDARY_RTOL = 1e-9


class CurveId(Enum):
    S1 = "S1"
    S2 = "S2"
    R1 = "R1"
    R2 = "R2"
    R1INV = "R1inv"
    R2INV = "R2inv"
    D = "D"
    E = "E"
    J = "J"    # 1-rarefaction curve from the upper Hugoniot corner point
    J2 = "J2"  # 2-rarefaction curve from the lower Hugoniot corner point


class Region(Enum):
    Q7 = "Q7"
    SDSL_ONLY = "SDSL_ONLY"
    ABOVE_D = "ABOVE_D"
    BELOW_E = "BELOW_E"
    ON_J1 = "ON_J1"
    HAT_D = "HAT_D"
    HAT_HAT_D = "HAT_HAT_D"
    HAT_E = "HAT_E"
    HAT_HAT_E = "HAT_HAT_E"
    D0 = "D0"
    CLASSICAL = "CLASSICAL"


@dataclass(frozen=True)
class Classification:
    """Region of a right state together with the witnessing base state."""

    region: Region
    base: State
    point: State


@dataclass(frozen=True)
class LocusPoints:
    """Distinguished intersection points of the singular-locus boundary."""

    d_tilde: State   # lower corner: Hugoniot plus branch meets E at u0 - 3
    g_tilde: State   # upper corner: Hugoniot minus branch meets D at u0 - 3
    de_corner: State  # intersection of D and E


def hugoniot_v(base: State, u: float, branch: str) -> float:
    """v-value of the Hugoniot locus of ``base`` at abscissa ``u``.

    ``branch`` is ``"plus"`` (S1) or ``"minus"`` (S2).  Raises
    :class:`DomainError` when ``|u - u0| > sqrt(12)``.
    """
    w = u - base.u
    disc = 1.0 - w * w / 12.0
    if disc < -1e-12:
        raise DomainError(f"|u - u0| = {abs(w)} exceeds sqrt(12)")
    root = math.sqrt(max(disc, 0.0))
    if branch == "plus":
        return base.v + w * ((base.u + u) / 2.0 + root)
    if branch == "minus":
        return base.v + w * ((base.u + u) / 2.0 - root)
    raise ValueError(f"unknown branch {branch!r}")


def hugoniot_speed(base: State, u: float, branch: str) -> float:
    """Jump speed of the Hugoniot connection from ``base`` to abscissa ``u``."""
    w = u - base.u
    disc = 1.0 - w * w / 12.0
    if disc < -1e-12:
        raise DomainError(f"|u - u0| = {abs(w)} exceeds sqrt(12)")
    root = math.sqrt(max(disc, 0.0))
    # c = [u^2 - v]/[u]; substituting the branch formula cancels the jump.
    if branch == "plus":
        return (base.u + u) / 2.0 - root
    if branch == "minus":
        return (base.u + u) / 2.0 + root
    raise ValueError(f"unknown branch {branch!r}")


def rarefaction_v(base: State, u: float, family: str) -> float:
    """v-value of the rarefaction curve of ``base`` at abscissa ``u``."""
    quad = base.v - base.u * base.u / 2.0 + u * u / 2.0
    if family == "R1":
        return quad + u - base.u
    if family == "R2":
        return quad - u + base.u
    raise ValueError(f"unknown family {family!r}")


def inverse_rarefaction_v(right: State, u: float, family: str) -> float:
    """Left states whose forward rarefaction reaches ``right``.

    Rarefaction curves are level sets of their Riemann invariant, so the
    inverse curve coincides with the forward curve drawn through ``right``.
    """
    if family == "R1inv":
        return rarefaction_v(right, u, "R1")
    if family == "R2inv":
        return rarefaction_v(right, u, "R2")
    raise ValueError(f"unknown family {family!r}")


def curve_D_v(base: State, u: float) -> float:
    """Locus where the jump speed from ``base`` equals u0 - 1."""
    return base.v + u * u + u - base.u * u - base.u


def curve_E_v(base: State, u: float) -> float:
    """Locus where the jump speed from ``base`` equals u + 1."""
    return base.v - u + base.u * u - base.u * base.u + base.u


def curve_value(base: State, u: float, curve: CurveId) -> float:
    """Evaluate any named curve relative to ``base`` at abscissa ``u``."""
    if curve is CurveId.S1:
        return hugoniot_v(base, u, "plus")
    if curve is CurveId.S2:
        return hugoniot_v(base, u, "minus")
    if curve is CurveId.R1:
        return rarefaction_v(base, u, "R1")
    if curve is CurveId.R2:
        return rarefaction_v(base, u, "R2")
    if curve is CurveId.R1INV:
        return inverse_rarefaction_v(base, u, "R1inv")
    if curve is CurveId.R2INV:
        return inverse_rarefaction_v(base, u, "R2inv")
    if curve is CurveId.D:
        return curve_D_v(base, u)
    if curve is CurveId.E:
        return curve_E_v(base, u)
    if curve is CurveId.J:
        return rarefaction_v(locus_points(base).g_tilde, u, "R1")
    if curve is CurveId.J2:
        return rarefaction_v(locus_points(base).d_tilde, u, "R2")
    raise ValueError(f"unknown curve {curve!r}")


def locus_points(base: State) -> LocusPoints:
    u0, v0 = base.u, base.v
    return LocusPoints(
        d_tilde=State(u0 - 3.0, v0 - 3.0 * u0 + 3.0),
        g_tilde=State(u0 - 3.0, v0 - 3.0 * u0 + 6.0),
        de_corner=State(u0 - 2.0, v0 - 2.0 * u0 + 2.0),
    )


def _scale(base: State, q: State) -> float:
    return max(1.0, abs(base.u), abs(base.v), abs(q.u), abs(q.v))


def in_sdsl(base: State, q: State, rtol: float = BOUNDARY_RTOL) -> bool:
    """Membership in the full singular locus (delta data of any strength)."""
    tol = rtol * _scale(base, q)
    u0 = base.u
    u, v = q.u, q.v
    if u <= u0 - 3.0 + tol:
        lo = curve_E_v(base, u)
        hi = curve_D_v(base, u)
        if lo - tol <= v <= hi + tol:
            return True
    if u0 - 3.0 - tol <= u <= u0 + tol and u >= u0 - SQRT12 - tol:
        uc = min(max(u, u0 - SQRT12), u0)
        lo = hugoniot_v(base, uc, "plus")
        hi = hugoniot_v(base, uc, "minus")
        if lo - tol <= v <= hi + tol:
            return True
    return False


def in_q7(base: State, q: State, rtol: float = BOUNDARY_RTOL) -> bool:
    """Membership in the zero-strength singular locus.

    The locus is the strip between E and D for u <= u0 - 3, minus the open
    wedge between the two Hugoniot arcs (where the strength rate k is
    negative, so a zero-strength singular shock cannot exist).
    """
    tol = rtol * _scale(base, q)
    u0 = base.u
    u, v = q.u, q.v
    if u > u0 - 3.0 + tol:
        return False
    lo = curve_E_v(base, u)
    hi = curve_D_v(base, u)
    if not (lo - tol <= v <= hi + tol):
        return False
    if u >= u0 - SQRT12 - tol:
        uc = min(max(u, u0 - SQRT12), u0)
        s_lo = hugoniot_v(base, uc, "plus")
        s_hi = hugoniot_v(base, uc, "minus")
        if s_lo + tol < v < s_hi - tol:
            return False
    return True


def on_j1(base: State, q: State, rtol: float = BOUNDARY_RTOL) -> bool:
    """True when ``q`` lies on either Hugoniot arc with u in [u0-sqrt(12), u0-3]."""
    tol = rtol * _scale(base, q)
    u0 = base.u
    if not (u0 - SQRT12 - tol <= q.u <= u0 - 3.0 + tol):
        return False
    uc = min(max(q.u, u0 - SQRT12), u0)
    return (
        abs(q.v - hugoniot_v(base, uc, "plus")) <= tol
        or abs(q.v - hugoniot_v(base, uc, "minus")) <= tol
    )


def classify(base: State, q: State, rtol: float = BOUNDARY_RTOL) -> Classification:
    """Region of a right state ``q`` relative to ``base``.

    The decision tree is deterministic: the J1 locus is tested first
    (within tolerance), then the zero-strength locus, then the strength-
    carrying bands, then the composite-solution regions; everything else is
    CLASSICAL.
    """
    tol = rtol * _scale(base, q)
    u0 = base.u
    u, v = q.u, q.v

    if on_j1(base, q, rtol):
        return Classification(Region.ON_J1, base, q)
    if in_q7(base, q, rtol):
        return Classification(Region.Q7, base, q)
    if in_sdsl(base, q, rtol):
        # inside the wedge between the Hugoniot arcs: decaying strength
        if u < u0 - 3.0:
            return Classification(Region.SDSL_ONLY, base, q)
        dv = curve_D_v(base, u)
        ev = curve_E_v(base, u)
        if u < u0 - 2.0 - tol:
            # here E <= D inside the wedge
            if v > dv + tol:
                return Classification(Region.HAT_D, base, q)
            if v < ev - tol:
                return Classification(Region.HAT_E, base, q)
            return Classification(Region.D0, base, q)
        # right of the D/E corner the two curves swap order
        if v > ev + tol:
            return Classification(Region.HAT_HAT_D, base, q)
        if v < dv - tol:
            return Classification(Region.HAT_HAT_E, base, q)
        return Classification(Region.SDSL_ONLY, base, q)
    if u <= u0 - 3.0 + tol:
        if v > curve_D_v(base, u):
            return Classification(Region.ABOVE_D, base, q)
        if v < curve_E_v(base, u):
            return Classification(Region.BELOW_E, base, q)
    return Classification(Region.CLASSICAL, base, q)


def between_d_and_e(base: State, q: State, rtol: float = BOUNDARY_RTOL) -> bool:
    """True when ``q`` is between the curves D and E of ``base`` (inclusive)."""
    tol = rtol * _scale(base, q)
    dv = curve_D_v(base, q.u)
    ev = curve_E_v(base, q.u)
    return min(dv, ev) - tol <= q.v <= max(dv, ev) + tol
