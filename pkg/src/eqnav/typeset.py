"""Deterministic mini-typesetter used to render the fixture corpus.

Lays out a transcript tree with a built-in stroke font, then rasterizes it
onto a white canvas.  Letters, digits and operators become navigable text
elements; fraction bars, radical signs and brackets are drawn as plain ink so
they can only be heard, never focused.  Element rectangles follow the tight
per-glyph metric boxes an extractor would report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bundle import BBox, EquationBundle, RasterImage, TextElement
from . import scoring
from .scoring import (
    Bracketed,
    Exponent,
    Fraction,
    Matrix,
    Node,
    Root,
    Sequence,
    Symbol,
)

# Layout constants, in em units relative to the baseline (negative = up).
AXIS = -0.25              # vertical center of =, +, fraction bars
BAR_HALF = 0.022          # half thickness reserved for rules
FRAC_PAD_NUM = 0.12       # air between numerator ink and the bar
FRAC_PAD_DEN = 0.123      # air between the bar and denominator ink
FRAC_PAD_X = 0.10
GAP_DEFAULT = 0.14
GAP_EQUALS = 0.34
GAP_BINOP = 0.22
GAP_EXP = 0.04
ROOT_GLYPH_W = 0.46
ROOT_GAP = 0.08
ROOT_BAR_RISE = 0.10
ROOT_OVERHANG = 0.06
BRACKET_W = 0.18
BRACKET_PAD = 0.04
BRACKET_EXTEND = 0.06
MATRIX_COL_GAP = 0.35
MATRIX_ROW_GAP = 0.30
MATRIX_PAD = 0.14
MARGIN = 0.15

_BINOPS = {"+", "-", "×"}

# char -> (advance, box top, box bottom); tight vertical metrics per class.
GLYPH_METRICS: dict[str, tuple[float, float, float]] = {
    "x": (0.55, -0.50, 0.0),
    "y": (0.55, -0.50, 0.22),
    "=": (0.55, -0.40, -0.10),
    "+": (0.50, -0.43, -0.07),
    "-": (0.40, -0.28, -0.22),
    "×": (0.50, -0.42, -0.08),
}
for _d in "0123456789":
    GLYPH_METRICS[_d] = (0.55, -0.65, 0.0)

# Stroke lists per glyph: (x, y) points in em, x within the advance box.
GLYPH_STROKES: dict[str, list[list[tuple[float, float]]]] = {
    "x": [[(0.07, -0.45), (0.48, -0.05)], [(0.48, -0.45), (0.07, -0.05)]],
    "y": [[(0.07, -0.45), (0.29, -0.10)], [(0.50, -0.45), (0.12, 0.18)]],
    "=": [[(0.06, -0.36), (0.49, -0.36)], [(0.06, -0.14), (0.49, -0.14)]],
    "+": [[(0.06, -0.25), (0.44, -0.25)], [(0.25, -0.39), (0.25, -0.11)]],
    "-": [[(0.05, -0.25), (0.35, -0.25)]],
    "×": [[(0.09, -0.38), (0.41, -0.12)], [(0.41, -0.38), (0.09, -0.12)]],
    "0": [[(0.27, -0.63), (0.12, -0.54), (0.09, -0.32), (0.12, -0.10),
           (0.27, -0.02), (0.42, -0.10), (0.45, -0.32), (0.42, -0.54), (0.27, -0.63)]],
    "1": [[(0.18, -0.52), (0.30, -0.63)], [(0.30, -0.63), (0.30, -0.02)],
          [(0.18, -0.02), (0.42, -0.02)]],
    "2": [[(0.08, -0.52), (0.18, -0.62), (0.36, -0.62), (0.46, -0.52),
           (0.46, -0.44), (0.08, -0.06), (0.08, -0.02), (0.47, -0.02)]],
    "3": [[(0.08, -0.56), (0.20, -0.63), (0.38, -0.63), (0.46, -0.54),
           (0.46, -0.42), (0.30, -0.34)],
          [(0.30, -0.34), (0.47, -0.24), (0.47, -0.12), (0.36, -0.02),
           (0.16, -0.02), (0.07, -0.10)]],
    "4": [[(0.36, -0.63), (0.07, -0.22)], [(0.07, -0.22), (0.50, -0.22)],
          [(0.36, -0.45), (0.36, -0.02)]],
    "5": [[(0.44, -0.63), (0.12, -0.63)], [(0.12, -0.63), (0.10, -0.38)],
          [(0.10, -0.38), (0.32, -0.42), (0.46, -0.30), (0.40, -0.08),
           (0.18, -0.02), (0.08, -0.08)]],
    "6": [[(0.40, -0.60), (0.20, -0.55), (0.10, -0.35), (0.12, -0.10),
           (0.28, -0.02), (0.42, -0.12), (0.42, -0.26), (0.12, -0.30)]],
    "7": [[(0.07, -0.63), (0.47, -0.63)], [(0.47, -0.63), (0.20, -0.02)]],
    "8": [[(0.27, -0.63), (0.12, -0.52), (0.27, -0.36), (0.42, -0.52), (0.27, -0.63)],
          [(0.27, -0.36), (0.10, -0.18), (0.27, -0.02), (0.44, -0.18), (0.27, -0.36)]],
    "9": [[(0.14, -0.05), (0.34, -0.10), (0.44, -0.30), (0.42, -0.55),
           (0.26, -0.63), (0.12, -0.53), (0.12, -0.39), (0.42, -0.35)]],
}


@dataclass
class _Metrics:
    width: float
    ascent: float   # extent above the baseline, positive
    descent: float  # extent below the baseline, positive


@dataclass
class _Canvas:
    """Collects glyph boxes and ink strokes in em coordinates."""

    elements: list[tuple[str, float, float, float, float]] = field(default_factory=list)
    glyph_strokes: list[list[tuple[float, float]]] = field(default_factory=list)
    rule_strokes: list[list[tuple[float, float]]] = field(default_factory=list)

    def add_glyph(self, char: str, x: float, baseline: float, navigable: bool) -> None:
        adv, top, bottom = GLYPH_METRICS[char]
        if navigable:
            self.elements.append((char, x, baseline + top, x + adv, baseline + bottom))
        for poly in GLYPH_STROKES[char]:
            self.glyph_strokes.append([(x + px, baseline + py) for px, py in poly])

    def add_rule(self, points: list[tuple[float, float]]) -> None:
        self.rule_strokes.append(points)


class _Layout:
    """Measure/place pass over a transcript tree."""

    def __init__(self, ink_only_texts: frozenset[str]):
        self.ink_only = ink_only_texts

    def measure(self, node: Node) -> _Metrics:
        if isinstance(node, Symbol):
            adv, top, bottom = GLYPH_METRICS[node.text]
            return _Metrics(adv, -top, max(bottom, 0.0))
        if isinstance(node, Sequence):
            width = 0.0
            asc = desc = 0.0
            prev: Node | None = None
            for child in node.children:
                m = self.measure(child)
                if prev is not None:
                    width += self.gap(prev, child)
                width += m.width
                asc = max(asc, m.ascent)
                desc = max(desc, m.descent)
                prev = child
            return _Metrics(width, asc, desc)
        if isinstance(node, Fraction):
            num = self.measure(node.numerator)
            den = self.measure(node.denominator)
            width = max(num.width, den.width) + 2 * FRAC_PAD_X
            num_base = AXIS - BAR_HALF - FRAC_PAD_NUM - num.descent
            den_top = AXIS + BAR_HALF + FRAC_PAD_DEN
            den_base = den_top + den.ascent
            asc = -(num_base) + num.ascent
            desc = den_base + den.descent
            return _Metrics(width, asc, desc)
        if isinstance(node, Exponent):
            base = self.measure(node.base)
            power = self.measure(node.power)
            pb = self.power_baseline(node.base, base)
            asc = max(base.ascent, -pb + power.ascent)
            desc = max(base.descent, pb + power.descent)
            return _Metrics(base.width + GAP_EXP + power.width, asc, desc)
        if isinstance(node, Root):
            rad = self.measure(node.radicand)
            bar_y = -rad.ascent - ROOT_BAR_RISE
            width = ROOT_GLYPH_W + ROOT_GAP + rad.width + ROOT_OVERHANG
            return _Metrics(width, -bar_y + 2 * BAR_HALF, rad.descent)
        if isinstance(node, Bracketed):
            body = self.measure(node.body)
            width = body.width + 2 * (BRACKET_W + BRACKET_PAD)
            return _Metrics(width, body.ascent + BRACKET_EXTEND, body.descent + BRACKET_EXTEND)
        if isinstance(node, Matrix):
            col_w, row_asc, row_desc = self._matrix_grid(node)
            grid_w = sum(col_w) + MATRIX_COL_GAP * (len(col_w) - 1)
            grid_h = sum(a + d for a, d in zip(row_asc, row_desc))
            grid_h += MATRIX_ROW_GAP * (len(row_asc) - 1)
            width = grid_w + 2 * (BRACKET_W + MATRIX_PAD)
            top = AXIS - grid_h / 2
            return _Metrics(width, -top + BRACKET_EXTEND, top + grid_h + BRACKET_EXTEND)
        raise TypeError(f"cannot measure {node!r}")

    def gap(self, prev: Node, cur: Node) -> float:
        for item in (prev, cur):
            if isinstance(item, Symbol):
                if item.text == "=":
                    return GAP_EQUALS
        for item in (prev, cur):
            if isinstance(item, Symbol) and item.text in _BINOPS:
                return GAP_BINOP
        return GAP_DEFAULT

    def power_baseline(self, base_node: Node, base: _Metrics) -> float:
        """Baseline offset for a power, relative to the base's baseline."""
        if isinstance(base_node, Symbol):
            _, top, bottom = GLYPH_METRICS[base_node.text]
            return (top + bottom) / 2 + 0.03
        return -base.ascent + 0.425

    def _matrix_grid(self, node: Matrix) -> tuple[list[float], list[float], list[float]]:
        cols = len(node.rows[0])
        col_w = [0.0] * cols
        row_asc: list[float] = []
        row_desc: list[float] = []
        for row in node.rows:
            asc = desc = 0.0
            for j, cell in enumerate(row):
                m = self.measure(cell)
                col_w[j] = max(col_w[j], m.width)
                asc = max(asc, m.ascent)
                desc = max(desc, m.descent)
            row_asc.append(asc)
            row_desc.append(desc)
        return col_w, row_asc, row_desc

    def place(self, node: Node, x: float, baseline: float, out: _Canvas) -> None:
        if isinstance(node, Symbol):
            out.add_glyph(node.text, x, baseline, node.text not in self.ink_only)
            return
        if isinstance(node, Sequence):
            prev: Node | None = None
            for child in node.children:
                if prev is not None:
                    x += self.gap(prev, child)
                self.place(child, x, baseline, out)
                x += self.measure(child).width
                prev = child
            return
        if isinstance(node, Fraction):
            num = self.measure(node.numerator)
            den = self.measure(node.denominator)
            width = max(num.width, den.width) + 2 * FRAC_PAD_X
            num_base = baseline + AXIS - BAR_HALF - FRAC_PAD_NUM - num.descent
            den_base = baseline + AXIS + BAR_HALF + FRAC_PAD_DEN + den.ascent
            self.place(node.numerator, x + (width - num.width) / 2, num_base, out)
            self.place(node.denominator, x + (width - den.width) / 2, den_base, out)
            out.add_rule([(x, baseline + AXIS), (x + width, baseline + AXIS)])
            return
        if isinstance(node, Exponent):
            base = self.measure(node.base)
            pb = self.power_baseline(node.base, base)
            self.place(node.base, x, baseline, out)
            self.place(node.power, x + base.width + GAP_EXP, baseline + pb, out)
            return
        if isinstance(node, Root):
            rad = self.measure(node.radicand)
            bar_y = baseline - rad.ascent - ROOT_BAR_RISE
            rad_x = x + ROOT_GLYPH_W + ROOT_GAP
            mid_y = bar_y + 0.45 * (baseline - bar_y)
            low_y = baseline + rad.descent - 0.02
            out.add_rule([(x + 0.02, mid_y), (x + 0.15, mid_y + 0.04)])
            out.add_rule([(x + 0.15, mid_y + 0.04), (x + 0.30, low_y)])
            out.add_rule([(x + 0.30, low_y), (x + ROOT_GLYPH_W, bar_y)])
            out.add_rule([(x + ROOT_GLYPH_W, bar_y), (rad_x + rad.width + ROOT_OVERHANG, bar_y)])
            self.place(node.radicand, rad_x, baseline, out)
            return
        if isinstance(node, Bracketed):
            body = self.measure(node.body)
            top = baseline - body.ascent - BRACKET_EXTEND
            bottom = baseline + body.descent + BRACKET_EXTEND
            h = bottom - top
            bend = 0.22 * h
            lx = x + 0.02
            out.add_rule([(lx + 0.13, top), (lx + 0.03, top + bend),
                          (lx + 0.03, bottom - bend), (lx + 0.13, bottom)])
            body_x = x + BRACKET_W + BRACKET_PAD
            self.place(node.body, body_x, baseline, out)
            rx = body_x + body.width + BRACKET_PAD
            out.add_rule([(rx + 0.05, top), (rx + 0.15, top + bend),
                          (rx + 0.15, bottom - bend), (rx + 0.05, bottom)])
            return
        if isinstance(node, Matrix):
            col_w, row_asc, row_desc = self._matrix_grid(node)
            grid_h = sum(a + d for a, d in zip(row_asc, row_desc))
            grid_h += MATRIX_ROW_GAP * (len(row_asc) - 1)
            top = baseline + AXIS - grid_h / 2
            grid_x = x + BRACKET_W + MATRIX_PAD
            row_base = top
            for i, row in enumerate(node.rows):
                row_base += row_asc[i]
                cx = grid_x
                for j, cell in enumerate(row):
                    m = self.measure(cell)
                    self.place(cell, cx + (col_w[j] - m.width) / 2, row_base, out)
                    cx += col_w[j] + MATRIX_COL_GAP
                row_base += row_desc[i] + MATRIX_ROW_GAP
            grid_w = sum(col_w) + MATRIX_COL_GAP * (len(col_w) - 1)
            b_top = top - BRACKET_EXTEND
            b_bottom = top + grid_h + BRACKET_EXTEND
            lx = x + 0.06
            out.add_rule([(lx, b_top), (lx, b_bottom)])
            out.add_rule([(lx, b_top), (lx + 0.12, b_top)])
            out.add_rule([(lx, b_bottom), (lx + 0.12, b_bottom)])
            rx = grid_x + grid_w + MATRIX_PAD + 0.12
            out.add_rule([(rx, b_top), (rx, b_bottom)])
            out.add_rule([(rx - 0.12, b_top), (rx, b_top)])
            out.add_rule([(rx - 0.12, b_bottom), (rx, b_bottom)])
            return
        raise TypeError(f"cannot place {node!r}")


def _stamp_line(pixels: np.ndarray, x1: float, y1: float, x2: float, y2: float,
                thickness: int) -> None:
    """Draw a straight stroke by stamping a square brush along the segment."""
    h, w = pixels.shape
    length = math.hypot(x2 - x1, y2 - y1)
    steps = max(1, int(math.ceil(length * 2)))
    half = thickness / 2.0
    for i in range(steps + 1):
        t = i / steps
        x = x1 + (x2 - x1) * t
        y = y1 + (y2 - y1) * t
        x0 = int(round(x - half))
        y0 = int(round(y - half))
        xa, xb = max(0, x0), min(w, x0 + thickness)
        ya, yb = max(0, y0), min(h, y0 + thickness)
        if xa < xb and ya < yb:
            pixels[ya:yb, xa:xb] = 0


def typeset_tree(
    tree: Node,
    ink_only_texts: frozenset[str] | set[str] = frozenset(),
    target_width: int = 300,
) -> EquationBundle:
    """Render a transcript tree into an equation bundle."""
    root = scoring.as_root(tree)
    layout = _Layout(frozenset(ink_only_texts))
    metrics = layout.measure(root)
    em = target_width / (metrics.width + 2 * MARGIN)
    canvas = _Canvas()
    layout.place(root, MARGIN, 0.0, canvas)

    height = int(math.ceil(em * (metrics.ascent + metrics.descent + 2 * MARGIN)))
    baseline_px = em * (MARGIN + metrics.ascent)
    pixels = np.full((height, target_width), 255, dtype=np.uint8)

    glyph_t = max(1, int(round(0.055 * em)))
    rule_t = max(1, int(round(0.045 * em)))
    for poly in canvas.glyph_strokes:
        for (xa, ya), (xb, yb) in zip(poly, poly[1:]):
            _stamp_line(pixels, em * xa, baseline_px + em * ya,
                        em * xb, baseline_px + em * yb, glyph_t)
    for poly in canvas.rule_strokes:
        for (xa, ya), (xb, yb) in zip(poly, poly[1:]):
            _stamp_line(pixels, em * xa, baseline_px + em * ya,
                        em * xb, baseline_px + em * yb, rule_t)

    elements = []
    for index, (text, left, top, right, bottom) in enumerate(canvas.elements, start=1):
        l = max(0, int(round(em * left)))
        t = max(0, int(round(baseline_px + em * top)))
        r = min(target_width, int(round(em * right)))
        b = min(height, int(round(baseline_px + em * bottom)))
        elements.append(TextElement(id=index, text=text, bbox=BBox(l, t, r - l, b - t)))

    return EquationBundle(image=RasterImage(pixels), elements=tuple(elements))


def typeset_transcript(
    transcript: str,
    ink_only_texts: frozenset[str] | set[str] = frozenset(),
    target_width: int = 300,
) -> EquationBundle:
    return typeset_tree(
        scoring.parse_transcript(transcript),
        ink_only_texts=ink_only_texts,
        target_width=target_width,
    )
