"""Deterministic SVG pictures of rank-2 hulls and rank-3 slices."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import UnsupportedRank
from .hull import HullContext, _saturated, slice_report

SIZE = 480
MARGIN = 40


@dataclass(frozen=True)
class Hull2D:
    max_length: int


@dataclass(frozen=True)
class Slice2D:
    i: int
    t: Fraction
    max_length: int


def convex_hull_2d(points: Sequence[tuple]) -> list[tuple]:
    """Counter-clockwise hull vertices (exact for Fractions), collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class _Canvas:
    def __init__(self, pts):
        xs = [float(p[0]) for p in pts] or [0.0]
        ys = [float(p[1]) for p in pts] or [0.0]
        self.x0, self.x1 = min(xs), max(xs)
        self.y0, self.y1 = min(ys), max(ys)
        span = max(self.x1 - self.x0, self.y1 - self.y0, 1e-9)
        pad = 0.15 * span
        self.x0 -= pad
        self.y0 -= pad
        self.scale = (SIZE - 2 * MARGIN) / (span + 2 * pad)

    def map(self, p) -> tuple[float, float]:
        return (MARGIN + (float(p[0]) - self.x0) * self.scale,
                SIZE - MARGIN - (float(p[1]) - self.y0) * self.scale)

    def line_through_box(self, a, b, c):
        # clip a*x + b*y = c to the visible box
        lo_x, hi_x = self.x0, self.x0 + (SIZE - 2 * MARGIN) / self.scale
        lo_y, hi_y = self.y0, self.y0 + (SIZE - 2 * MARGIN) / self.scale
        a, b, c = float(a), float(b), float(c)
        hits = []
        if b != 0:
            for x in (lo_x, hi_x):
                y = (c - a * x) / b
                if lo_y - 1e-12 <= y <= hi_y + 1e-12:
                    hits.append((x, y))
        if a != 0:
            for y in (lo_y, hi_y):
                x = (c - b * y) / a
                if lo_x - 1e-12 <= x <= hi_x + 1e-12:
                    hits.append((x, y))
        hits = sorted(set((round(x, 9), round(y, 9)) for x, y in hits))
        return (hits[0], hits[-1]) if len(hits) >= 2 else None


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _svg(body: list[str], title: str, banner: str | None) -> str:
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{title}</title>",
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    tail = []
    if banner:
        tail.append(f'<text x="{MARGIN}" y="{MARGIN // 2 + 6}" font-family="monospace" '
                    f'font-size="14" fill="#b00">{banner}</text>')
    return "\n".join(head + body + tail + ["</svg>", ""])


def _polygon(canvas, verts, fill, stroke):
    if len(verts) == 1:
        x, y = canvas.map(verts[0])
        return [f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="{stroke}"/>']
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(canvas.map, verts))
    tag = "polyline" if len(verts) == 2 else "polygon"
    return [f'<{tag} points="{pts}" fill="{fill}" stroke="{stroke}" stroke-width="2"/>']


def _walls(canvas, rows):
    out = []
    for a, b, c in rows:
        seg = canvas.line_through_box(a, b, c)
        if seg is None:
            continue
        (x0, y0), (x1, y1) = canvas.map(seg[0]), canvas.map(seg[1])
        out.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
                   'stroke="#999" stroke-dasharray="6,4" stroke-width="1"/>')
    return out


def render(ctx: HullContext, mode: Hull2D | Slice2D) -> str:
    datum = ctx.datum
    n = ctx.n
    levels = ctx.levels

    def wall(k, axes):
        # alpha_k restricted to the plane spanned by the two drawn coordinates
        r = datum.roots[k]
        fixed = sum((r[m] * v for m, v in enumerate(base) if m not in axes), Fraction(0))
        return r[axes[0]], r[axes[1]], -fixed

    if isinstance(mode, Hull2D):
        if n != 2:
            raise UnsupportedRank(f"hull pictures need rank 2, got {n}")
        elems = ctx.group.enumerate_by_length(mode.max_length)
        pts = [ctx.orbit_point(w) for w in elems]
        flat = [(p[0], p[1]) for p in pts]
        hull = convex_hull_2d(flat)
        canvas = _Canvas(flat)
        base = (Fraction(0), Fraction(0)) + tuple(levels)
        body = _walls(canvas, [wall(k, (0, 1)) for k in range(n)])
        body += _polygon(canvas, hull, "#dbe9f6", "#1f4e79")
        for p in flat:
            x, y = canvas.map(p)
            body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="#1f4e79"/>')
        truncated = not _saturated(ctx.group, range(n), mode.max_length)
        return _svg(body, f"orbit hull, {len(hull)} vertices",
                    f"Truncated at length {mode.max_length}" if truncated else None)

    if n != 3:
        raise UnsupportedRank(f"slice pictures need rank 3, got {n}")
    rep = slice_report(ctx, mode.i, mode.t, mode.max_length)
    axes = tuple(k for k in range(3) if k != mode.i)
    flat = [(v.point[axes[0]], v.point[axes[1]]) for v in rep.vertices]
    ess = [(v.point[axes[0]], v.point[axes[1]]) for v in rep.essential]
    hull = convex_hull_2d(flat)
    canvas = _Canvas(flat)
    base = tuple(Fraction(mode.t) if m == mode.i else Fraction(0) for m in range(3)) + tuple(levels)
    body = _walls(canvas, [wall(k, axes) for k in axes])
    body += _polygon(canvas, hull, "#e8f3e0", "#2e6b1f")
    ess_set = set(ess)
    # edges of the polygon with both ends essential belong to the essential part
    for a, b in zip(hull, hull[1:] + hull[:1]):
        if len(hull) > 2 and a in ess_set and b in ess_set:
            (x0, y0), (x1, y1) = canvas.map(a), canvas.map(b)
            body.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
                        'stroke="#c0392b" stroke-width="4"/>')
    for p in flat:
        x, y = canvas.map(p)
        color = "#c0392b" if p in ess_set else "#2e6b1f"
        body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="{color}"/>')
    return _svg(body, f"slice i={mode.i} t={mode.t}, {len(hull)} vertices, m={rep.m}",
                f"Truncated at length {mode.max_length}" if rep.truncated else None)
