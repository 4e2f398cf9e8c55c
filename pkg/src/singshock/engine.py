"""Event-driven interaction engine.

A scenario is piecewise-constant initial data with optional point deltas at
the breakpoints.  Each breakpoint is resolved into elementary waves; the
engine then advances the whole picture from event to event: pairwise wave
collisions, strength-vanish times of decaying singular shocks, and singular
shocks crossing rarefaction fans (delegated to :mod:`singshock.fanpath`).
The result is a :class:`Timeline` of trajectories, constant-state cells and
interaction events.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import curves
from .curves import Region, classify
from .errors import (
    EventCongestion,
    ExpectedTwoShocks,
    Unresolvable,
)
from .fanpath import FanDescriptor, PathEvent, integrate_path
from .riemann import (
    Rarefaction,
    Shock,
    WaveFan,
    rarefaction_then_singular,
    singular_then_rarefaction,
    solve,
    solve_classical,
)
from .singular import SingularShock, make_singular_shock
from .states import DeltaState, State

CONGESTION_TOL = 1e-12
_TIME_EPS = 1e-11


# ---------------------------------------------------------------------------
# scenario / timeline data model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Scenario:
    """Piecewise-constant initial data with optional point deltas.

    ``states[i]`` sits between ``breakpoints[i-1]`` and ``breakpoints[i]``;
    ``deltas[i]`` (if given) is the initial delta strength carried at
    ``breakpoints[i]``.
    """

    states: tuple[State, ...]
    breakpoints: tuple[float, ...]
    deltas: tuple[float, ...] = ()
    t_max: float = 1.0

    def __post_init__(self):
        if len(self.states) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one more state than breakpoints")
        if len(self.states) < 1:
            raise ValueError("need at least one state")
        if any(b2 <= b1 for b1, b2 in
               zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if self.deltas and len(self.deltas) != len(self.breakpoints):
            raise ValueError("deltas must align with breakpoints")
        if any(z < 0 for z in self.deltas):
            raise ValueError("delta strengths must be nonnegative")
        if not self.t_max > 0:
            raise ValueError("t_max must be positive")

    def delta_at(self, i: int) -> float:
        return self.deltas[i] if self.deltas else 0.0


@dataclass
class Trajectory:
    """One wave's path in the x-t plane.

    Straight trajectories store (x0, t0, speed); curved singular paths
    additionally carry sampled (t, x, beta) arrays.  ``t1`` is the end time
    (None while the wave is still alive at t_max).
    """

    id: int
    kind: str               # "shock" | "singular" | "fan_edge"
    family: int             # 1 or 2 for classical waves, 0 for singular
    x0: float
    t0: float
    speed: float
    left: State
    right: State
    t1: Optional[float] = None
    zeta0: float = 0.0
    k: float = 0.0
    samples_t: Optional[np.ndarray] = None
    samples_x: Optional[np.ndarray] = None
    samples_beta: Optional[np.ndarray] = None

    def position_at(self, t: float) -> float:
        if self.samples_t is not None:
            return float(np.interp(t, self.samples_t, self.samples_x))
        return self.x0 + self.speed * (t - self.t0)

    def strength_at(self, t: float) -> float:
        if self.kind != "singular":
            return 0.0
        if self.samples_t is not None:
            return float(np.interp(t, self.samples_t, self.samples_beta))
        return self.zeta0 + self.k * (t - self.t0)


@dataclass
class Event:
    x: float
    t: float
    kind: str               # "collision" | "vanish" | "fan_exit" | "fan_vanish"
    incoming: list[int]
    outgoing: list[int]
    zeta: float
    regime: str = ""


@dataclass
class Timeline:
    trajectories: list[Trajectory]
    events: list[Event]
    t_max: float
    warnings: list[str] = field(default_factory=list)

    def trajectory(self, tid: int) -> Trajectory:
        for tr in self.trajectories:
            if tr.id == tid:
                return tr
        raise KeyError(tid)

    def to_json(self) -> str:
        def traj_obj(tr: Trajectory):
            o = {
                "id": tr.id, "kind": tr.kind, "family": tr.family,
                "x0": tr.x0, "t0": tr.t0, "speed": tr.speed,
                "t1": tr.t1,
                "left": [tr.left.u, tr.left.v],
                "right": [tr.right.u, tr.right.v],
                "zeta0": tr.zeta0, "k": tr.k,
            }
            if tr.samples_t is not None:
                o["samples"] = {
                    "t": tr.samples_t.tolist(),
                    "x": tr.samples_x.tolist(),
                    "beta": tr.samples_beta.tolist(),
                }
            return o

        return json.dumps({
            "t_max": self.t_max,
            "trajectories": [traj_obj(tr) for tr in self.trajectories],
            "events": [{
                "x": e.x, "t": e.t, "kind": e.kind,
                "incoming": e.incoming, "outgoing": e.outgoing,
                "zeta": e.zeta, "regime": e.regime,
            } for e in self.events],
            "warnings": self.warnings,
        }, indent=2, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "Timeline":
        doc = json.loads(text)
        trajs = []
        for o in doc["trajectories"]:
            tr = Trajectory(
                id=o["id"], kind=o["kind"], family=o["family"],
                x0=o["x0"], t0=o["t0"], speed=o["speed"],
                left=State(*o["left"]), right=State(*o["right"]),
                t1=o["t1"], zeta0=o["zeta0"], k=o["k"],
            )
            if "samples" in o:
                tr.samples_t = np.asarray(o["samples"]["t"])
                tr.samples_x = np.asarray(o["samples"]["x"])
                tr.samples_beta = np.asarray(o["samples"]["beta"])
            trajs.append(tr)
        events = [Event(e["x"], e["t"], e["kind"], list(e["incoming"]),
                        list(e["outgoing"]), e["zeta"], e.get("regime", ""))
                  for e in doc["events"]]
        return Timeline(trajs, events, doc["t_max"],
                        list(doc.get("warnings", [])))


# ---------------------------------------------------------------------------
# elementary-operation layer
# ---------------------------------------------------------------------------

def meet(w1, w2, t_max: float = np.inf) -> Optional[tuple[float, float]]:
    """Crossing point of two straight trajectories, or None.

    Each argument carries (x0, t0, speed).  Returns (X, T) of the first
    crossing strictly after both birth times, or None if the paths are
    parallel, diverging, or cross after ``t_max``.
    """
    c1, c2 = w1.speed, w2.speed
    if abs(c1 - c2) < 1e-15:
        return None
    # lines x = x0_i + c_i (t - t0_i)
    T = (w2.x0 - w1.x0 + c1 * w1.t0 - c2 * w2.t0) / (c1 - c2)
    if T <= max(w1.t0, w2.t0) + _TIME_EPS or T > t_max:
        return None
    X = w2.x0 + c2 * (T - w2.t0)
    return X, T


def post_interaction_data(w1: Trajectory, w2: Trajectory,
                          at: tuple[float, float]) -> tuple[State, DeltaState]:
    """Delta Riemann data formed when two waves collide.

    The outgoing data are the outermost incoming states with delta strength
    equal to the sum of the incoming strengths at the collision time.
    """
    _, T = at
    zeta = w1.strength_at(T) + w2.strength_at(T)
    return w1.left, DeltaState(w2.right, zeta)


def resolve(left: State, right: DeltaState,
            at: tuple[float, float]) -> WaveFan:
    """Resolve delta Riemann data into an outgoing wave group.

    Right states between the D and E curves give a single overcompressive
    singular shock; above both, a 1-rarefaction followed by a singular
    shock; below both, a singular shock followed by a 2-rarefaction.
    Without a delta the classical/singular solver handles everything.
    """
    X, T = at
    if right.zeta == 0.0:
        return solve(left, right.state, birth_x=X, birth_t=T)

    u1 = right.state.u
    d = curves.curve_D_v(left, u1)
    e = curves.curve_E_v(left, u1)
    lo, hi = min(d, e), max(d, e)
    tol = curves.BOUNDARY_RTOL * max(1.0, abs(lo), abs(hi))
    v1 = right.state.v
    if lo - tol <= v1 <= hi + tol:
        ss = make_singular_shock(left, right.state, zeta0=right.zeta,
                                 birth_x=X, birth_t=T)
        return WaveFan(left, right.state, (ss,))
    if v1 > hi:
        return rarefaction_then_singular(left, right.state, right.zeta, X, T)
    return singular_then_rarefaction(left, right.state, right.zeta, X, T)


# ---------------------------------------------------------------------------
# live fronts used by the event loop
# ---------------------------------------------------------------------------

@dataclass
class _Front:
    """A live wave during the event loop, tied to its Timeline trajectory."""

    traj: Trajectory
    wave: object            # Shock | SingularShock | FanDescriptor

    @property
    def is_fan(self) -> bool:
        return isinstance(self.wave, FanDescriptor)

    @property
    def is_singular(self) -> bool:
        return self.traj.kind == "singular"

    def left_edge(self):
        """(x0, t0, speed) of the front's left boundary ray."""
        if self.is_fan:
            fd: FanDescriptor = self.wave
            return _Ray(fd.center_x, fd.center_t, fd.xi_tail)
        return _Ray(self.traj.x0, self.traj.t0, self.traj.speed)

    def right_edge(self):
        if self.is_fan:
            fd: FanDescriptor = self.wave
            return _Ray(fd.center_x, fd.center_t, fd.xi_head)
        return _Ray(self.traj.x0, self.traj.t0, self.traj.speed)

    @property
    def left_state(self) -> State:
        return self.traj.left

    @property
    def right_state(self) -> State:
        return self.traj.right


@dataclass(frozen=True)
class _Ray:
    x0: float
    t0: float
    speed: float


class _Builder:
    """Accumulates trajectories/events and hands out ids."""

    def __init__(self, t_max: float):
        self.ids = itertools.count()
        self.timeline = Timeline([], [], t_max)

    def add_traj(self, **kw) -> Trajectory:
        tr = Trajectory(id=next(self.ids), **kw)
        self.timeline.trajectories.append(tr)
        return tr

    def fronts_from_wavefan(self, wf: WaveFan, x: float, t: float
                            ) -> list[_Front]:
        out = []
        for w in wf.waves:
            if isinstance(w, SingularShock):
                tr = self.add_traj(
                    kind="singular", family=0, x0=x, t0=t, speed=w.speed,
                    left=w.left, right=w.right, zeta0=w.zeta0, k=w.k)
                out.append(_Front(tr, w))
            elif isinstance(w, Shock):
                tr = self.add_traj(
                    kind="shock", family=w.family, x0=x, t0=t,
                    speed=w.speed, left=w.left, right=w.right)
                out.append(_Front(tr, w))
            elif isinstance(w, Rarefaction):
                fd = FanDescriptor(
                    family=w.family, center_x=x, center_t=t,
                    xi_tail=w.speed_tail, xi_head=w.speed_head,
                    tail_state=w.left)
                tr = self.add_traj(
                    kind="fan_edge", family=w.family, x0=x, t0=t,
                    speed=w.speed_tail, left=w.left, right=w.right)
                out.append(_Front(tr, fd))
            else:  # pragma: no cover - defensive
                raise Unresolvable(f"unknown wave type {type(w)!r}")
        return out


# ---------------------------------------------------------------------------
# the event loop
# ---------------------------------------------------------------------------

def run_scenario(s: Scenario, strict_congestion: bool = False) -> Timeline:
    """Advance a scenario from event to event up to ``s.t_max``.

    Collisions are resolved pairwise through :func:`resolve`; a singular
    shock reaching a fan's tail edge is integrated through the fan; a
    decaying singular shock whose strength reaches zero is replaced by the
    classical solution of its side states (required to be two admissible
    shocks).  Near-coincident events (within 1e-12 in t) are ordered by x
    and reported — as a warning by default, as :class:`EventCongestion`
    when ``strict_congestion`` is set.
    """
    b = _Builder(s.t_max)
    tl = b.timeline

    # initial wave groups at t = 0
    fronts: list[_Front] = []
    for i, x in enumerate(s.breakpoints):
        wf = resolve(s.states[i],
                     DeltaState(s.states[i + 1], s.delta_at(i)),
                     (x, 0.0))
        fronts.extend(b.fronts_from_wavefan(wf, x, 0.0))

    t_now = 0.0
    max_events = 200
    while len(tl.events) < max_events:
        # candidate events: (t, x, kind, index)
        cands: list[tuple[float, float, str, int]] = []
        for i in range(len(fronts) - 1):
            m = meet(fronts[i].right_edge(), fronts[i + 1].left_edge(),
                     s.t_max)
            if m is not None and m[1] > t_now - _TIME_EPS:
                cands.append((m[1], m[0], "collision", i))
        for i, fr in enumerate(fronts):
            if fr.is_singular and fr.traj.k < 0 and fr.traj.zeta0 > 0:
                tv = fr.traj.t0 - fr.traj.zeta0 / fr.traj.k
                if t_now - _TIME_EPS < tv <= s.t_max:
                    cands.append((tv, fr.traj.position_at(tv), "vanish", i))
        if not cands:
            break

        cands.sort(key=lambda c: (c[0], c[1]))
        t_ev, x_ev, kind, i = cands[0]
        near = [c for c in cands[1:] if c[0] - t_ev <= CONGESTION_TOL]
        if near:
            msg = (f"coincident events at t={t_ev}: "
                   f"{[(c[2], c[1]) for c in cands[:len(near) + 1]]}; "
                   f"ordered by x")
            if strict_congestion:
                raise EventCongestion(msg)
            tl.warnings.append(msg)

        if kind == "vanish":
            fronts = _resolve_vanish(b, fronts, i, x_ev, t_ev)
        else:
            fl, fr_ = fronts[i], fronts[i + 1]
            if fl.is_singular and fr_.is_fan:
                fronts = _resolve_fan_crossing(b, s, fronts, i, x_ev, t_ev)
            elif fl.is_fan or fr_.is_fan:
                fronts = _resolve_fan_merge(b, fronts, i, x_ev, t_ev)
            else:
                fronts = _resolve_collision(b, fronts, i, x_ev, t_ev)
        t_now = t_ev

    return tl


def _close(fr: _Front, t: float):
    fr.traj.t1 = t


def _resolve_collision(b: _Builder, fronts, i, x, t):
    fl, fr = fronts[i], fronts[i + 1]
    left, dright = post_interaction_data(fl.traj, fr.traj, (x, t))
    wf = resolve(left, dright, (x, t))
    _close(fl, t)
    _close(fr, t)
    new = b.fronts_from_wavefan(wf, x, t)
    b.timeline.events.append(Event(
        x, t, "collision",
        incoming=[fl.traj.id, fr.traj.id],
        outgoing=[f.traj.id for f in new],
        zeta=dright.zeta,
        regime=_regime_label(left, dright),
    ))
    return fronts[:i] + new + fronts[i + 2:]


def _resolve_vanish(b: _Builder, fronts, i, x, t):
    fr = fronts[i]
    _close(fr, t)
    wf = solve_classical(fr.left_state, fr.right_state)
    shocks = [w for w in wf.waves if isinstance(w, Shock)]
    if len(wf.waves) != 2 or len(shocks) != 2:
        raise ExpectedTwoShocks(
            f"vanish at (x={x}, t={t}) of {fr.left_state} | "
            f"{fr.right_state} did not yield two shocks: {wf.waves}")
    new = b.fronts_from_wavefan(wf, x, t)
    b.timeline.events.append(Event(
        x, t, "vanish",
        incoming=[fr.traj.id],
        outgoing=[f.traj.id for f in new],
        zeta=0.0,
    ))
    return fronts[:i] + new + fronts[i + 1:]


def _resolve_fan_crossing(b: _Builder, s: Scenario, fronts, i, x, t):
    """A singular shock reaches a fan's tail edge: curved-path regime."""
    fl, ffan = fronts[i], fronts[i + 1]
    fd: FanDescriptor = ffan.wave
    zeta = fl.traj.strength_at(t)
    path = integrate_path(fl.left_state, fd, (x, t), zeta, t_end=s.t_max)

    _close(fl, t)
    curved = b.add_traj(
        kind="singular", family=0, x0=x, t0=t,
        speed=float(path.c[0]), left=fl.left_state,
        right=path.exit_state if path.exit_state else fd.tail_state,
        t1=path.t_end if path.event is not PathEvent.COMPLETED else None,
        zeta0=zeta, k=0.0,
        samples_t=path.t, samples_x=path.x, samples_beta=path.beta)
    entry_event = Event(
        x, t, "collision",
        incoming=[fl.traj.id, ffan.traj.id],
        outgoing=[curved.id], zeta=zeta)
    b.timeline.events.append(entry_event)

    if path.event is PathEvent.COMPLETED:
        # still inside the fan at t_max; fan persists beyond the path
        return fronts[:i] + [_Front(curved, fl.wave)] + fronts[i + 2:]

    xe, te = path.x_end, path.t_end
    if path.event in (PathEvent.EXITED_FAN, PathEvent.OC_LEFT,
                      PathEvent.OC_RIGHT):
        # Fan consumed (at the head edge), or the path speed met a
        # bounding characteristic speed inside the fan -- the switch into
        # a composite solution.  Either way the continuation is the delta
        # Riemann problem against the state beyond the fan.
        _close(ffan, te)
        wf = resolve(fl.left_state,
                     DeltaState(ffan.right_state, path.beta_end), (xe, te))
        new = b.fronts_from_wavefan(wf, xe, te)
        b.timeline.events.append(Event(
            xe, te, "fan_exit",
            incoming=[curved.id], outgoing=[f.traj.id for f in new],
            zeta=path.beta_end))
        return fronts[:i] + new + fronts[i + 2:]

    # VANISHED inside the fan: classical re-solve against the local fan
    # state; the unswept part of the fan survives with a truncated tail.
    q = path.exit_state
    wf = solve_classical(fl.left_state, q)
    shocks = [w for w in wf.waves if isinstance(w, Shock)]
    if len(wf.waves) != 2 or len(shocks) != 2:
        raise ExpectedTwoShocks(
            f"in-fan vanish at (x={xe}, t={te}) of {fl.left_state} | {q} "
            f"did not yield two shocks: {wf.waves}")
    new = b.fronts_from_wavefan(wf, xe, te)
    xi_star = fd.xi_at(xe, te)
    _close(ffan, te)
    fd2 = FanDescriptor(family=fd.family, center_x=fd.center_x,
                        center_t=fd.center_t, xi_tail=xi_star,
                        xi_head=fd.xi_head, tail_state=q)
    tr2 = b.add_traj(kind="fan_edge", family=fd.family, x0=xe, t0=te,
                     speed=xi_star, left=q, right=ffan.right_state)
    rest = _Front(tr2, fd2)
    b.timeline.events.append(Event(
        xe, te, "fan_vanish",
        incoming=[curved.id],
        outgoing=[f.traj.id for f in new] + [tr2.id],
        zeta=0.0))
    return fronts[:i] + new + [rest] + fronts[i + 2:]


def _resolve_fan_merge(b: _Builder, fronts, i, x, t):
    """A classical wave meets a fan: re-solve outermost states classically."""
    fl, fr = fronts[i], fronts[i + 1]
    _close(fl, t)
    _close(fr, t)
    wf = solve(fl.left_state, fr.right_state, birth_x=x, birth_t=t)
    new = b.fronts_from_wavefan(wf, x, t)
    b.timeline.events.append(Event(
        x, t, "collision",
        incoming=[fl.traj.id, fr.traj.id],
        outgoing=[f.traj.id for f in new],
        zeta=fl.traj.strength_at(t) + fr.traj.strength_at(t)))
    return fronts[:i] + new + fronts[i + 2:]


def _regime_label(left: State, right: DeltaState) -> str:
    """Outcome label for the post-interaction data, by region of the
    right state: single singular (growing/constant/decaying), composite
    with a leading or trailing rarefaction, or classical."""
    cls = classify(left, right.state)
    region = cls.region
    if region in (Region.ABOVE_D,):
        return "rarefaction_then_singular"
    if region in (Region.BELOW_E,):
        return "singular_then_rarefaction"
    if region in (Region.Q7, Region.ON_J1, Region.SDSL_ONLY,
                  Region.HAT_D, Region.HAT_E, Region.HAT_HAT_D,
                  Region.HAT_HAT_E, Region.D0):
        return f"single_singular[{region.name}]"
    if right.zeta > 0:
        return "delta_composite"
    return "classical"
