"""Deterministic SVG x-t diagrams for timelines.

Static SVG 1.1, byte-for-byte reproducible for a fixed Timeline: floats are
formatted with a fixed precision and elements are emitted in trajectory-id
order.  Singular shocks are stroked heavier, with width growing with their
mean strength; events are drawn as circles.
"""

from __future__ import annotations

from .engine import Timeline, Trajectory

_W, _H = 640.0, 480.0
_PAD = 40.0


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def _traj_points(tr: Trajectory, t_max: float):
    if tr.samples_t is not None:
        return list(zip(tr.samples_x.tolist(), tr.samples_t.tolist()))
    t1 = tr.t1 if tr.t1 is not None else t_max
    return [(tr.x0, tr.t0), (tr.position_at(t1), t1)]


def render_timeline(tl: Timeline) -> str:
    pts = []
    for tr in tl.trajectories:
        pts.extend(_traj_points(tr, tl.t_max))
    for e in tl.events:
        pts.append((e.x, e.t))
    if not pts:
        pts = [(0.0, 0.0), (1.0, 1.0)]
    xs = [p[0] for p in pts]
    ts = [p[1] for p in pts]
    x_lo, x_hi = min(xs), max(xs)
    if x_hi - x_lo < 1e-9:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0
    t_hi = max(max(ts), tl.t_max)

    def sx(x):
        return _PAD + (x - x_lo) / (x_hi - x_lo) * (_W - 2 * _PAD)

    def sy(t):
        return _H - _PAD - t / t_hi * (_H - 2 * _PAD)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(_W)}" height="{_fmt(_H)}" '
        f'viewBox="0 0 {_fmt(_W)} {_fmt(_H)}">',
        f'<rect width="{_fmt(_W)}" height="{_fmt(_H)}" fill="white"/>',
        # axes
        f'<line x1="{_fmt(_PAD)}" y1="{_fmt(_H - _PAD)}" '
        f'x2="{_fmt(_W - _PAD)}" y2="{_fmt(_H - _PAD)}" '
        f'stroke="black" stroke-width="1"/>',
        f'<line x1="{_fmt(_PAD)}" y1="{_fmt(_H - _PAD)}" '
        f'x2="{_fmt(_PAD)}" y2="{_fmt(_PAD)}" '
        f'stroke="black" stroke-width="1"/>',
    ]
    for tr in sorted(tl.trajectories, key=lambda t: t.id):
        p = _traj_points(tr, tl.t_max)
        path = " ".join(f"{_fmt(sx(x))},{_fmt(sy(t))}" for x, t in p)
        if tr.kind == "singular":
            t1 = tr.t1 if tr.t1 is not None else tl.t_max
            mean_beta = 0.5 * (tr.strength_at(tr.t0) + tr.strength_at(t1))
            width = 2.0 + min(mean_beta, 6.0)
            color, dash = "#b30000", ""
        elif tr.kind == "fan_edge":
            width, color, dash = 1.0, "#0057b3", ' stroke-dasharray="4,3"'
        else:
            width, color, dash = 1.5, "#222222", ""
        out.append(
            f'<polyline points="{path}" fill="none" stroke="{color}" '
            f'stroke-width="{_fmt(width)}"{dash}/>')
    for e in tl.events:
        out.append(
            f'<circle cx="{_fmt(sx(e.x))}" cy="{_fmt(sy(e.t))}" r="4" '
            f'fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
