"""Orbit computation and rendering: an SVG figure plus an optional CSV list."""

from __future__ import annotations

import csv

from .errors import InvalidInputError
from .extended_plane import INF, Point, as_point, format_point
from .moebius import MoebiusMap

__all__ = ["orbit_points", "render_orbit_svg", "write_orbit_csv"]


def orbit_points(f: MoebiusMap, start: Point, iterations: int) -> list:
    """start, f(start), ..., f^iterations(start)."""
    if iterations < 1:
        raise InvalidInputError("iteration count must be >= 1")
    z = as_point(start)
    points = [z]
    for _ in range(iterations):
        z = f(z)
        points.append(z)
    return points


def write_orbit_csv(points, path: str):
    """Point list as CSV: step, literal, and split real/imaginary parts."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "point", "re", "im"])
        for step, p in enumerate(points):
            if p is INF:
                writer.writerow([step, "inf", "", ""])
            else:
                writer.writerow([step, format_point(p), repr(p.real), repr(p.imag)])


def render_orbit_svg(points, path: str, title: str = ""):
    """Polyline and markers over the finite points, viewport fit to their
    bounding box padded 10%; passes through infinity break the polyline and
    are drawn as labeled markers on the frame boundary."""
    import matplotlib
    from matplotlib.figure import Figure

    finite = [p for p in points if p is not INF]
    if finite:
        xs = [p.real for p in finite]
        ys = [p.imag for p in finite]
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
    else:
        x0 = y0 = -1.0
        x1 = y1 = 1.0
    span_x = (x1 - x0) or 1.0
    span_y = (y1 - y0) or 1.0
    x0 -= 0.1 * span_x
    x1 += 0.1 * span_x
    y0 -= 0.1 * span_y
    y1 += 0.1 * span_y

    fig = Figure(figsize=(6.0, 6.0))
    ax = fig.add_subplot(111)

    run_x: list = []
    run_y: list = []

    def flush_run():
        if len(run_x) >= 2:
            ax.plot(run_x, run_y, color="tab:blue", linewidth=1.0, zorder=1)
        run_x.clear()
        run_y.clear()

    for p in points:
        if p is INF:
            flush_run()
        else:
            run_x.append(p.real)
            run_y.append(p.imag)
    flush_run()

    if finite:
        ax.scatter([p.real for p in finite], [p.imag for p in finite],
                   s=18, color="tab:blue", zorder=2)
        ax.scatter([finite[0].real], [finite[0].imag], s=45, color="tab:red",
                   zorder=3, label="start")
    inf_steps = [k for k, p in enumerate(points) if p is INF]
    for slot, step in enumerate(inf_steps):
        x = x0 + (slot + 1) * (x1 - x0) / (len(inf_steps) + 1)
        ax.scatter([x], [y1], s=45, marker="^", color="tab:orange",
                   clip_on=False, zorder=3)
        ax.annotate(f"inf (step {step})", (x, y1), textcoords="offset points",
                    xytext=(0, -12), ha="center", fontsize=8)

    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_aspect("equal", adjustable="datalim")
    if title:
        ax.set_title(title)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.grid(True, linewidth=0.3, alpha=0.5)
    with matplotlib.rc_context({"svg.hashsalt": "mobiustopo"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
