"""Deterministic SVG/CSV renderers for sets, cuts, and integer points.

This is the only module in the package that performs floating-point
arithmetic.  Everything here is presentation-only: rendered coordinates
never feed back into any exact computation or certificate.  For fixed
inputs the emitted bytes are identical across runs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

from conecuts.conic2d import ConicBlock2D, _poly_of_block
from conecuts.errors import MalformedInputError

Window = tuple[int, int, int, int]

_EPS = 1e-9
_AXIS_TOL = 1e-7
_SAMPLES = 257

_BLOCK_COLORS = ("#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf")
_CUT_COLOR = "#d62728"
_POINT_COLOR = "#222222"

PRESENTATION_NOTE = (
    "presentation-only rendering; floating point is confined to this file"
)


def _f(value: float) -> str:
    """Fixed-width float formatting so output bytes are reproducible."""
    if value == 0.0:
        value = 0.0  # normalize -0.0
    return f"{value:.6f}"


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def cut_label(pi: Sequence[Fraction], rhs: Fraction) -> str:
    """Human-readable 'a*x1 + b*x2 >= c' with exact coefficients."""
    terms = []
    for i, c in enumerate(pi, start=1):
        if c == 0:
            continue
        mag = abs(c)
        coef = "" if mag == 1 else f"{_fmt_coef(mag)}*"
        if not terms:
            sign = "-" if c < 0 else ""
        else:
            sign = " - " if c < 0 else " + "
        terms.append(f"{sign}{coef}x{i}")
    lhs = "".join(terms) if terms else "0"
    return f"{lhs} >= {_fmt_coef(Fraction(rhs))}"


# ------------------------------------------------------- boundary sampling


def _line_segment_in_window(
    normal: tuple[float, float], offset: float, window: Window
) -> Optional[list[tuple[float, float]]]:
    """Clip the line normal.x == offset to the window rectangle."""
    x0, x1, y0, y1 = window
    n1, n2 = normal
    norm2 = n1 * n1 + n2 * n2
    if norm2 <= _EPS:
        return None
    px, py = offset * n1 / norm2, offset * n2 / norm2
    dx, dy = -n2, n1
    lo, hi = -math.inf, math.inf
    for p, d, a, b in ((px, dx, x0, x1), (py, dy, y0, y1)):
        if abs(d) <= _EPS:
            if not (a - _EPS <= p <= b + _EPS):
                return None
            continue
        t0, t1 = (a - p) / d, (b - p) / d
        if t0 > t1:
            t0, t1 = t1, t0
        lo, hi = max(lo, t0), min(hi, t1)
    if lo >= hi or not math.isfinite(lo) or not math.isfinite(hi):
        return None
    return [(px + lo * dx, py + lo * dy), (px + hi * dx, py + hi * dy)]


def sample_boundary(
    block: ConicBlock2D, window: Window, samples: int = _SAMPLES
) -> list[list[tuple[float, float]]]:
    """Polylines tracing the block's boundary inside the window (floats).

    Halfspaces yield one clipped segment.  Conic blocks are column-scanned:
    for each sampled abscissa the boundary ordinates are the real roots of
    the block polynomial restricted to that column, filtered by the axis
    condition (which selects the branch for hyperbolas).
    """
    x0, x1, y0, y1 = window
    if block.kind == "halfspace":
        n = block.rows[-1]
        seg = _line_segment_in_window(
            (float(n[0]), float(n[1])), float(block.rhs[-1]), window
        )
        return [seg] if seg else []

    xx, xy, yy, cx, cy, c0 = (float(c) for c in _poly_of_block(block.rows, block.rhs))
    am1, am2 = (float(c) for c in block.rows[-1])
    bm = float(block.rhs[-1])

    def on_branch(x: float, y: float) -> bool:
        return am1 * x + am2 * y - bm >= -_AXIS_TOL

    chains: dict[int, list[tuple[float, float]]] = {0: [], 1: []}
    done: list[list[tuple[float, float]]] = []

    def flush(key: int) -> None:
        if len(chains[key]) >= 2:
            done.append(chains[key])
        chains[key] = []

    step = (x1 - x0) / (samples - 1)
    for i in range(samples):
        x = x0 + i * step
        a = yy
        b = xy * x + cy
        c = xx * x * x + cx * x + c0
        roots: list[Optional[float]] = [None, None]
        if abs(a) > _EPS:
            disc = b * b - 4.0 * a * c
            if disc >= 0.0:
                sq = math.sqrt(disc)
                r0, r1 = (-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)
                roots = sorted((r0, r1))  # type: ignore[assignment]
        elif abs(b) > _EPS:
            roots[0] = -c / b
        for key in (0, 1):
            y = roots[key]
            if y is None or not (y0 - _EPS <= y <= y1 + _EPS) or not on_branch(x, y):
                flush(key)
            else:
                chains[key].append((x, y))
    flush(0)
    flush(1)
    return done


# ------------------------------------------------------------ CSV rendering


def render_csv(
    blocks: Sequence[ConicBlock2D],
    cuts: Sequence[tuple[Sequence[Fraction], Fraction]],
    points: Sequence[tuple[int, int]],
    window: Window,
) -> str:
    """CSV table of boundary samples, cut-line endpoints, integer points."""
    lines = ["series,label,x,y"]
    for bi, block in enumerate(blocks):
        for ci, chain in enumerate(sample_boundary(block, window)):
            label = f"block{bi}:{block.kind}:chain{ci}"
            for x, y in chain:
                lines.append(f"boundary,{label},{_f(x)},{_f(y)}")
    for pi_vec, rhs in cuts:
        label = cut_label(pi_vec, rhs).replace(",", ";")
        seg = _line_segment_in_window(
            (float(pi_vec[0]), float(pi_vec[1])), float(rhs), window
        )
        if seg:
            for x, y in seg:
                lines.append(f"cut,{label},{_f(x)},{_f(y)}")
    for x, y in points:
        lines.append(f"point,feasible,{x},{y}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------ SVG rendering

_W = 640
_H = 640
_M = 48  # margin


class _Mapper:
    def __init__(self, window: Window):
        x0, x1, y0, y1 = window
        self.sx = (_W - 2 * _M) / max(x1 - x0, 1)
        self.sy = (_H - 2 * _M) / max(y1 - y0, 1)
        self.x0, self.y1 = x0, y1

    def px(self, x: float) -> float:
        return _M + (x - self.x0) * self.sx

    def py(self, y: float) -> float:
        return _M + (self.y1 - y) * self.sy


def _svg_path(points: Sequence[tuple[float, float]], mp: _Mapper) -> str:
    parts = []
    for i, (x, y) in enumerate(points):
        cmd = "M" if i == 0 else "L"
        parts.append(f"{cmd}{_f(mp.px(x))},{_f(mp.py(y))}")
    return " ".join(parts)


def render_svg(
    blocks: Sequence[ConicBlock2D],
    cuts: Sequence[tuple[Sequence[Fraction], Fraction]],
    points: Sequence[tuple[int, int]],
    window: Window,
    title: str = "",
) -> str:
    """Self-contained SVG: block boundaries, cut lines, integer points."""
    x0, x1, y0, y1 = window
    mp = _Mapper(window)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f"<!-- {PRESENTATION_NOTE} -->",
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="#ffffff"/>',
        f'<rect x="{_M}" y="{_M}" width="{_W - 2 * _M}" height="{_H - 2 * _M}" '
        f'fill="none" stroke="#cccccc" stroke-width="1"/>',
    ]
    if title:
        out.append(
            f'<text x="{_M}" y="{_M - 16}" font-family="monospace" '
            f'font-size="14" fill="#000000">{title}</text>'
        )
    # coordinate axes, when visible
    if x0 <= 0 <= x1:
        out.append(
            f'<line x1="{_f(mp.px(0))}" y1="{_M}" x2="{_f(mp.px(0))}" '
            f'y2="{_H - _M}" stroke="#dddddd" stroke-width="1"/>'
        )
    if y0 <= 0 <= y1:
        out.append(
            f'<line x1="{_M}" y1="{_f(mp.py(0))}" x2="{_W - _M}" '
            f'y2="{_f(mp.py(0))}" stroke="#dddddd" stroke-width="1"/>'
        )
    for bi, block in enumerate(blocks):
        color = _BLOCK_COLORS[bi % len(_BLOCK_COLORS)]
        for chain in sample_boundary(block, window):
            out.append(
                f'<path d="{_svg_path(chain, mp)}" fill="none" '
                f'stroke="{color}" stroke-width="2"/>'
            )
    legend_y = _M + 16
    for pi_vec, rhs in cuts:
        seg = _line_segment_in_window(
            (float(pi_vec[0]), float(pi_vec[1])), float(rhs), window
        )
        if seg:
            (ax, ay), (bx, by) = seg
            out.append(
                f'<line x1="{_f(mp.px(ax))}" y1="{_f(mp.py(ay))}" '
                f'x2="{_f(mp.px(bx))}" y2="{_f(mp.py(by))}" '
                f'stroke="{_CUT_COLOR}" stroke-width="1.5" '
                f'stroke-dasharray="6,4"/>'
            )
        out.append(
            f'<text x="{_M + 8}" y="{legend_y}" font-family="monospace" '
            f'font-size="12" fill="{_CUT_COLOR}">cut: {cut_label(pi_vec, rhs)}'
            f"</text>"
        )
        legend_y += 16
    for x, y in points:
        out.append(
            f'<circle cx="{_f(mp.px(x))}" cy="{_f(mp.py(y))}" r="3" '
            f'fill="{_POINT_COLOR}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ------------------------------------------------- admissible-region slice


def _slice_shapes(j: int) -> tuple[list[tuple[float, float]], list, list]:
    if j not in (1, 2):
        raise MalformedInputError("the rendered slice supports j in {1, 2}")
    diamond = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0), (1.0, 0.0)]
    if j == 1:
        excluded = [(1.0, 0.0), (-1.0, 0.0)]
        included = [(0.0, 1.0), (0.0, -1.0)]
    else:
        excluded = [(0.0, 1.0), (0.0, -1.0)]
        included = [(1.0, 0.0), (-1.0, 0.0)]
    return diamond, excluded, included


def _circle_samples(samples: int = 181) -> list[tuple[float, float]]:
    pts = []
    for i in range(samples):
        t = 2.0 * math.pi * i / (samples - 1)
        pts.append((math.cos(t), math.sin(t)))
    return pts


def gamma_slice_csv(j: int) -> str:
    """CSV of the admissible-weight slice at unit axis coordinate (m = 3)."""
    diamond, excluded, included = _slice_shapes(j)
    lines = ["series,label,x,y"]
    for x, y in _circle_samples():
        lines.append(f"boundary,cone-interior-slice,{_f(x)},{_f(y)}")
    for x, y in diamond:
        lines.append(f"boundary,weight-region-slice,{_f(x)},{_f(y)}")
    for x, y in excluded:
        lines.append(f"point,excluded-corner,{_f(x)},{_f(y)}")
    for x, y in included:
        lines.append(f"point,included-corner,{_f(x)},{_f(y)}")
    return "\n".join(lines) + "\n"


def gamma_slice_svg(j: int) -> str:
    """SVG of the admissible-weight slice at unit axis coordinate (m = 3).

    Shows the closed unit-sum diamond (solid) with the two corners on the
    tracked coordinate axis excluded (open markers), plus the open unit
    disc from the cone interior (dashed circle).
    """
    diamond, excluded, included = _slice_shapes(j)
    window: Window = (-2, 2, -2, 2)
    mp = _Mapper(window)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f"<!-- {PRESENTATION_NOTE} -->",
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="#ffffff"/>',
        f'<text x="{_M}" y="{_M - 16}" font-family="monospace" font-size="14" '
        f'fill="#000000">admissible weights, slice at unit axis weight '
        f"(tracked coordinate {j})</text>",
        f'<line x1="{_f(mp.px(0))}" y1="{_M}" x2="{_f(mp.px(0))}" '
        f'y2="{_H - _M}" stroke="#dddddd" stroke-width="1"/>',
        f'<line x1="{_M}" y1="{_f(mp.py(0))}" x2="{_W - _M}" '
        f'y2="{_f(mp.py(0))}" stroke="#dddddd" stroke-width="1"/>',
        f'<path d="{_svg_path(_circle_samples(), mp)}" fill="none" '
        f'stroke="#1f77b4" stroke-width="1.5" stroke-dasharray="5,4"/>',
        f'<path d="{_svg_path(diamond, mp)}" fill="#2ca02c" fill-opacity="0.15" '
        f'stroke="#2ca02c" stroke-width="2"/>',
    ]
    for x, y in included:
        out.append(
            f'<circle cx="{_f(mp.px(x))}" cy="{_f(mp.py(y))}" r="4" '
            f'fill="#2ca02c"/>'
        )
    for x, y in excluded:
        out.append(
            f'<circle cx="{_f(mp.px(x))}" cy="{_f(mp.py(y))}" r="4" '
            f'fill="#ffffff" stroke="#d62728" stroke-width="2"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
