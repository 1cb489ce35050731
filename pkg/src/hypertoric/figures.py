"""SVG 1.1 drawings: the hyperplane arrangement when ``n = 2`` and the chamber
structure in ``k*`` when ``d = 2``."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .arrangement import bounded_chambers, build_arrangement, enumerate_faces
from .torus_model import TorusSpec
from .wallcross import enumerate_chambers

SIZE = 400
MARGIN = 20
DIM_ERROR = "figure requires d=2 or n=2"


class FigureError(ValueError):
    pass


def _sign_label(sign: Sequence[int]) -> str:
    return "".join("+" if s > 0 else "-" if s < 0 else "0" for s in sign)


class _Canvas:
    def __init__(self, xmin: float, xmax: float, ymin: float, ymax: float):
        self.box = (xmin, xmax, ymin, ymax)
        self.scale = (SIZE - 2 * MARGIN) / max(xmax - xmin, ymax - ymin)
        self.parts: list[str] = []

    def xy(self, p: Sequence[float]) -> tuple[float, float]:
        xmin, _, _, ymax = self.box
        return (MARGIN + (p[0] - xmin) * self.scale, MARGIN + (ymax - p[1]) * self.scale)

    def clip_line(self, normal: Sequence[float], offset: float):
        """Endpoints of ``{normal . p + offset = 0}`` inside the box."""
        xmin, xmax, ymin, ymax = self.box
        a, b = normal
        pts = []
        if b:
            for x in (xmin, xmax):
                y = -(a * x + offset) / b
                if ymin - 1e-12 <= y <= ymax + 1e-12:
                    pts.append((x, y))
        if a:
            for y in (ymin, ymax):
                x = -(b * y + offset) / a
                if xmin - 1e-12 <= x <= xmax + 1e-12:
                    pts.append((x, y))
        pts = sorted(set((round(x, 12), round(y, 12)) for x, y in pts))
        return (pts[0], pts[-1]) if len(pts) >= 2 else None

    def line(self, p, q, cls: str) -> None:
        (x1, y1), (x2, y2) = self.xy(p), self.xy(q)
        self.parts.append(f'<line class="{cls}" x1="{x1:.2f}" y1="{y1:.2f}" '
                          f'x2="{x2:.2f}" y2="{y2:.2f}"/>')

    def polygon(self, pts, cls: str) -> None:
        coords = " ".join("{:.2f},{:.2f}".format(*self.xy(p)) for p in pts)
        self.parts.append(f'<polygon class="{cls}" points="{coords}"/>')

    def circle(self, p, r: float, cls: str) -> None:
        x, y = self.xy(p)
        self.parts.append(f'<circle class="{cls}" cx="{x:.2f}" cy="{y:.2f}" r="{r}"/>')

    def text(self, p, label: str, cls: str = "label") -> None:
        x, y = self.xy(p)
        self.parts.append(f'<text class="{cls}" x="{x:.2f}" y="{y:.2f}">{escape(label)}</text>')

    def render(self, title: str) -> str:
        style = ("line.wall{stroke:#222;stroke-width:1.5}"
                 "line.hyp{stroke:#225;stroke-width:1.2}"
                 "polygon.face{fill:#9bc;fill-opacity:0.5;stroke:none}"
                 "circle.vertex{fill:#222}"
                 "text.label{font-family:sans-serif;font-size:11px;text-anchor:middle}")
        head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">\n'
                f'<title>{escape(title)}</title>\n<style>{style}</style>\n')
        return head + "\n".join(self.parts) + "\n</svg>\n"


def _ordered(vertices: Sequence[Sequence[float]]) -> list[tuple[float, float]]:
    cx = sum(v[0] for v in vertices) / len(vertices)
    cy = sum(v[1] for v in vertices) / len(vertices)
    return sorted(((v[0], v[1]) for v in vertices),
                  key=lambda v: math.atan2(v[1] - cy, v[0] - cx))


def arrangement_svg(spec: TorusSpec, alpha: Sequence) -> str:
    """Hyperplanes ``F_i`` in ``R^2`` with the bounded chambers shaded."""
    if spec.n != 2:
        raise FigureError(DIM_ERROR)
    arr = build_arrangement(spec, alpha)
    faces = enumerate_faces(arr)
    pts = [tuple(float(x) for x in f.witness) for f in faces if f.dim == 0]
    if not pts:
        pts = [tuple(float(x) for x in f.witness) for f in faces] or [(0.0, 0.0)]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    pad = max(1.0, 0.3 * max(max(xs) - min(xs), max(ys) - min(ys)))
    cv = _Canvas(min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad)
    for ch in bounded_chambers(arr, faces):
        cv.polygon(_ordered([[float(x) for x in v] for v in ch.vertices]), "face")
    for H in arr.hyperplanes:
        if not any(H.normal):
            continue
        seg = cv.clip_line([float(x) for x in H.normal], float(H.offset))
        if seg:
            cv.line(seg[0], seg[1], "hyp")
            cv.text(seg[1], f"F{H.index + 1}")
    for f in faces:
        if f.dim == 0:
            cv.circle([float(x) for x in f.witness], 2.5, "vertex")
    return cv.render(f"hyperplane arrangement, alpha = {_fmt(alpha)}")


def chamber_svg(spec: TorusSpec, beta_re: Optional[Sequence] = None,
                beta_im: Optional[Sequence] = None) -> str:
    """Active walls through the origin of ``k*`` with chambers labelled by sign."""
    if spec.d != 2:
        raise FigureError(DIM_ERROR)
    cs = enumerate_chambers(spec, beta_re, beta_im)
    cv = _Canvas(-1.0, 1.0, -1.0, 1.0)
    for s in cs.active:
        y1, y2 = cs.walls[s].normal
        seg = cv.clip_line([float(y1), float(y2)], 0.0)
        if seg:
            cv.line(seg[0], seg[1], "wall")
            cv.text(seg[1], f"W{s + 1}")
    for sign, wit in cs.chambers:
        w = [float(x) for x in wit]
        r = math.hypot(*w) or 1.0
        cv.text((0.6 * w[0] / r, 0.6 * w[1] / r), _sign_label(sign))
    return cv.render(f"{cs.count} chambers")


def _fmt(v: Sequence) -> str:
    return "(" + ", ".join(str(Fraction(x)) for x in v) + ")"


def emit_svg(svg: str, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
