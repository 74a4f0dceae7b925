"""SVG plots of the three planar projections of the trefoil curve
t -> (t^3 - 3t, t^4 - 4t^2 - 1, t^5 - 10t).

This is the only place floating point is used.  Numbers are written with
repr(), which is the shortest round-trip form, so output is byte-stable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable

T_MIN, T_MAX = -2.1, 2.1
DEFAULT_SAMPLES = 600
DEFAULT_SIZE = 400
MARGIN = 24


def g1(t: float) -> float:
    return t**3 - 3 * t


def g2(t: float) -> float:
    return t**4 - 4 * t**2 - 1


def g3(t: float) -> float:
    return t**5 - 10 * t


@dataclass(frozen=True)
class Projection:
    name: str
    label: str
    fx: Callable[[float], float]
    fy: Callable[[float], float]
    window: tuple  # xmin, xmax, ymin, ymax
    xticks: tuple
    yticks: tuple

    def point(self, t: float) -> tuple:
        return (self.fx(t), self.fy(t))


PROJECTIONS = (
    Projection(
        "trefoil-12", "t -> (t^3-3t, t^4-4t^2-1)", g1, g2,
        (-3.0, 3.0, -5.1, 1.0), tuple(range(-3, 4)), tuple(range(-5, 2)),
    ),
    Projection(
        "trefoil-13", "t -> (t^3-3t, t^5-10t)", g1, g3,
        (-3.0, 3.0, -15.0, 15.0), tuple(range(-3, 4)), tuple(range(-15, 16, 5)),
    ),
    Projection(
        "trefoil-23", "t -> (t^4-4t^2-1, t^5-10t)", g2, g3,
        (-5.1, 1.0, -15.0, 15.0), tuple(range(-5, 2)), tuple(range(-15, 16, 5)),
    ),
)


def linspace(a: float, b: float, n: int) -> list:
    if n < 2:
        raise ValueError("samples must be at least 2")
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def _num(v: float) -> str:
    return repr(float(v))


class _Frame:
    def __init__(self, window: tuple, size: int):
        self.xmin, self.xmax, self.ymin, self.ymax = window
        self.size = size
        self.inner = size - 2 * MARGIN

    def px(self, x: float) -> float:
        return MARGIN + (x - self.xmin) / (self.xmax - self.xmin) * self.inner

    def py(self, y: float) -> float:
        return MARGIN + (self.ymax - y) / (self.ymax - self.ymin) * self.inner


def render_svg(proj: Projection, samples: int = DEFAULT_SAMPLES, size: int = DEFAULT_SIZE) -> str:
    ts = linspace(T_MIN, T_MAX, samples)
    f = _Frame(proj.window, size)
    ax_x = f.py(0.0)
    ax_y = f.px(0.0)
    lo, hi = MARGIN, size - MARGIN
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"<title>{proj.label}</title>",
        f'<clipPath id="{proj.name}-clip"><rect x="{lo}" y="{lo}" width="{f.inner}" height="{f.inner}"/></clipPath>',
        '<g stroke="black" stroke-width="1">',
        f'<line x1="{lo}" y1="{_num(ax_x)}" x2="{hi}" y2="{_num(ax_x)}"/>',
        f'<line x1="{_num(ax_y)}" y1="{lo}" x2="{_num(ax_y)}" y2="{hi}"/>',
    ]
    for x in proj.xticks:
        p = f.px(x)
        out.append(f'<line x1="{_num(p)}" y1="{_num(ax_x - 3)}" x2="{_num(p)}" y2="{_num(ax_x + 3)}"/>')
    for y in proj.yticks:
        p = f.py(y)
        out.append(f'<line x1="{_num(ax_y - 3)}" y1="{_num(p)}" x2="{_num(ax_y + 3)}" y2="{_num(p)}"/>')
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="9" fill="black">')
    for x in proj.xticks:
        if x:
            out.append(f'<text x="{_num(f.px(x))}" y="{_num(ax_x + 12)}" text-anchor="middle">{x}</text>')
    for y in proj.yticks:
        if y:
            out.append(f'<text x="{_num(ax_y - 5)}" y="{_num(f.py(y) + 3)}" text-anchor="end">{y}</text>')
    out.append("</g>")
    pts = " ".join(f"{_num(f.px(x))},{_num(f.py(y))}" for x, y in (proj.point(t) for t in ts))
    out.append(
        f'<polyline clip-path="url(#{proj.name}-clip)" fill="none" stroke="gray" stroke-width="1.5" points="{pts}"/>'
    )
    x0, y0 = proj.point(0.0)
    out.append(
        f'<circle data-t="0" data-x="{_num(x0)}" data-y="{_num(y0)}" '
        f'cx="{_num(f.px(x0))}" cy="{_num(f.py(y0))}" r="2.5" fill="black"/>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_plots(out_dir: str, samples: int = DEFAULT_SAMPLES, size: int = DEFAULT_SIZE) -> list:
    """Write the three SVGs into out_dir and return their paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for proj in PROJECTIONS:
        path = os.path.join(out_dir, f"{proj.name}.svg")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(render_svg(proj, samples, size))
        paths.append(path)
    return paths
