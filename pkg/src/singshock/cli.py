"""Command-line front end.

Subcommands:

* ``classify`` — region of a right state relative to a base state
* ``riemann``  — solve a (delta) Riemann problem, emit a JSON descriptor
* ``simulate`` — run a scenario file, write solution.json / CSV / SVG
* ``oracle``   — finite-volume corroboration run with a comparison report

Exit codes partition error classes for scripting: 2 parse/validation,
3 unsolvable Riemann data, 4 engine failure, 5 oracle failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import curves
from .engine import Scenario, Timeline, run_scenario
from .errors import SingshockError
from .fv import Grid, measure_delta_mass, measure_shock_position, run as fv_run
from .riemann import Rarefaction, Shock, WaveFan, solve, solve_with_delta
from .singular import SingularShock, alpha_split
from .states import DeltaState, State
from .svg import render_timeline

EXIT_PARSE = 2
EXIT_RIEMANN = 3
EXIT_ENGINE = 4
EXIT_ORACLE = 5


class _CliParseError(Exception):
    pass


def _parse_state(text: str) -> State:
    try:
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 2 or not all(math.isfinite(p) for p in parts):
            raise ValueError
        return State(parts[0], parts[1])
    except ValueError:
        raise _CliParseError(f"expected 'u,v' with finite numbers, got {text!r}")


def load_scenario(path: str) -> Scenario:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise _CliParseError(f"cannot read scenario {path}: {exc}")
    try:
        states = tuple(State(float(u), float(v)) for u, v in doc["states"])
        breakpoints = tuple(float(b) for b in doc["breakpoints"])
        deltas = tuple(float(z) for z in doc.get("deltas", ()))
        t_max = float(doc.get("t_max", 1.0))
        if not all(math.isfinite(b) for b in breakpoints):
            raise ValueError("non-finite breakpoint")
        return Scenario(states=states, breakpoints=breakpoints,
                        deltas=deltas, t_max=t_max)
    except (KeyError, TypeError, ValueError) as exc:
        raise _CliParseError(f"invalid scenario {path}: {exc}")


def _wave_obj(w) -> dict:
    if isinstance(w, SingularShock):
        a0, a1 = alpha_split(w.left, w.right, w.speed)
        return {
            "kind": "singular", "speed": w.speed, "k": w.k,
            "zeta0": w.zeta0, "alpha_split": [a0, a1],
            "left": [w.left.u, w.left.v], "right": [w.right.u, w.right.v],
        }
    if isinstance(w, Shock):
        return {
            "kind": "shock", "family": w.family, "speed": w.speed,
            "left": [w.left.u, w.left.v], "right": [w.right.u, w.right.v],
        }
    assert isinstance(w, Rarefaction)
    return {
        "kind": "rarefaction", "family": w.family,
        "speed_tail": w.speed_tail, "speed_head": w.speed_head,
        "left": [w.left.u, w.left.v], "right": [w.right.u, w.right.v],
    }


def descriptor_for(wf: WaveFan) -> dict:
    return {
        "left": [wf.left.u, wf.left.v],
        "right": [wf.right.u, wf.right.v],
        "waves": [_wave_obj(w) for w in wf.waves],
    }


def cmd_classify(args) -> int:
    base = _parse_state(args.base)
    point = _parse_state(args.point)
    cls = curves.classify(base, point)
    print(cls.region.name)
    u = point.u
    for name, fn in (("D", curves.curve_D_v), ("E", curves.curve_E_v)):
        print(f"{name}({u:g}) = {fn(base, u):.12g}")
    for branch in ("plus", "minus"):
        label = "S1" if branch == "plus" else "S2"
        try:
            val = f"{curves.hugoniot_v(base, u, branch):.12g}"
        except SingshockError:
            val = "outside domain"
        print(f"{label}({u:g}) = {val}")
    return 0


def cmd_riemann(args) -> int:
    left = _parse_state(args.left)
    right = _parse_state(args.right)
    try:
        if args.zeta and args.zeta > 0:
            wf = solve_with_delta(left, DeltaState(right, args.zeta))
        else:
            wf = solve(left, right)
    except SingshockError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_RIEMANN
    text = json.dumps(descriptor_for(wf), indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0


def _write_trajectories_csv(tl: Timeline, path: Path,
                            samples_per_traj: int = 64):
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["trajectory_id", "t", "x", "beta"])
        for tr in tl.trajectories:
            if tr.samples_t is not None:
                for t, x, b in zip(tr.samples_t, tr.samples_x,
                                   tr.samples_beta):
                    w.writerow([tr.id, repr(float(t)), repr(float(x)),
                                repr(float(b))])
            else:
                t1 = tr.t1 if tr.t1 is not None else tl.t_max
                for t in np.linspace(tr.t0, t1, samples_per_traj):
                    w.writerow([tr.id, repr(float(t)),
                                repr(tr.position_at(float(t))),
                                repr(tr.strength_at(float(t)))])


def cmd_simulate(args) -> int:
    scenario = load_scenario(args.scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        tl = run_scenario(scenario)
    except SingshockError as exc:
        print(f"engine error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    (out / "solution.json").write_text(tl.to_json() + "\n")
    _write_trajectories_csv(tl, out / "trajectories.csv")
    (out / "diagram.svg").write_text(render_timeline(tl))
    print(f"wrote {out / 'solution.json'}, {out / 'trajectories.csv'}, "
          f"{out / 'diagram.svg'}")
    print(f"events: {len(tl.events)}, trajectories: {len(tl.trajectories)}")
    return 0


def cmd_oracle(args) -> int:
    scenario = load_scenario(args.scenario)
    span = (max(scenario.breakpoints) - min(scenario.breakpoints)
            if scenario.breakpoints else 0.0)
    margin = 6.0 * max(1.0, span) + 6.0 * args.t_end
    x_min = (min(scenario.breakpoints) if scenario.breakpoints else 0.0) - margin
    x_max = (max(scenario.breakpoints) if scenario.breakpoints else 0.0) + margin

    analytic_speed = None
    analytic_k = None
    if len(scenario.states) == 2:
        try:
            wf = solve(scenario.states[0], scenario.states[1])
            if len(wf.waves) == 1 and isinstance(wf.waves[0], SingularShock):
                analytic_speed = wf.waves[0].speed
                analytic_k = wf.waves[0].k
            elif len(wf.waves) == 1 and isinstance(wf.waves[0], Shock):
                analytic_speed = wf.waves[0].speed
                analytic_k = 0.0
        except SingshockError:
            pass

    grid = Grid(x_min, x_max, args.cells)
    times = [args.t_end * f for f in (0.2, 0.4, 0.6, 0.8, 1.0)]
    try:
        snaps = fv_run(scenario, grid, args.t_end, snapshot_times=times,
                       singular_speed=analytic_speed)
        rows = []
        for sn in snaps:
            try:
                pos = measure_shock_position(sn)
                mass = measure_delta_mass(sn)
            except SingshockError:
                pos, mass = float("nan"), float("nan")
            rows.append((sn.t, pos, mass))
    except SingshockError as exc:
        print(f"oracle error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ORACLE

    out = Path(args.out) if args.out else Path(".")
    out.mkdir(parents=True, exist_ok=True)
    final = snaps[-1]
    with (out / "oracle.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "u", "v"])
        for x, u, v in zip(final.x, final.u, final.v):
            w.writerow([repr(float(x)), repr(float(u)), repr(float(v))])

    good = [r for r in rows if math.isfinite(r[1])]
    if len(good) >= 2:
        ts = [r[0] for r in good]
        speed_hat = float(np.polyfit(ts, [r[1] for r in good], 1)[0])
        slope_hat = float(np.polyfit(ts, [r[2] for r in good], 1)[0])
        print(f"measured front speed: {speed_hat:.6g}")
        print(f"measured delta-mass slope: {slope_hat:.6g}")
        if analytic_speed is not None:
            rel = abs(speed_hat - analytic_speed) / max(abs(analytic_speed),
                                                        1e-12)
            print(f"analytic speed: {analytic_speed:.6g}  "
                  f"(relative error {rel:.3%})")
        if analytic_k is not None and abs(analytic_k) > 1e-12:
            rel = abs(slope_hat - analytic_k) / abs(analytic_k)
            print(f"analytic strength rate: {analytic_k:.6g}  "
                  f"(relative error {rel:.3%})")
    else:
        print("zero front report: no measurable front in any snapshot")
    print(f"conservation residual: "
          f"{max(sn.conservation_residual() for sn in snaps):.3e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="singshock",
        description="Singular shock waves in the ion-acoustic 2x2 system: "
                    "classification, Riemann solutions, interaction "
                    "timelines, and a finite-volume oracle.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="region of a right state")
    c.add_argument("--base", required=True, metavar="u,v")
    c.add_argument("--point", required=True, metavar="u,v")
    c.set_defaults(func=cmd_classify)

    r = sub.add_parser("riemann", help="solve a (delta) Riemann problem")
    r.add_argument("--left", required=True, metavar="u,v")
    r.add_argument("--right", required=True, metavar="u,v")
    r.add_argument("--zeta", type=float, default=0.0)
    r.add_argument("--out")
    r.set_defaults(func=cmd_riemann)

    s = sub.add_parser("simulate", help="run a scenario file")
    s.add_argument("scenario")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_simulate)

    o = sub.add_parser("oracle", help="finite-volume corroboration run")
    o.add_argument("scenario")
    o.add_argument("--cells", type=int, default=4000)
    o.add_argument("--t-end", type=float, default=1.0)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
