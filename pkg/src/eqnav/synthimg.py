"""Synthetic stroke images for audio and region oracle tests.

Strokes are exactly one pixel wide with no anti-aliasing, so expected pixel
positions (and therefore expected pitches) can be stated in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bundle import RasterImage


@dataclass(frozen=True)
class HRule:
    y: int
    x0: int
    x1: int


@dataclass(frozen=True)
class VRule:
    x: int
    y0: int
    y1: int


@dataclass(frozen=True)
class Diagonal:
    x0: int
    y0: int
    x1: int
    y1: int


@dataclass(frozen=True)
class RadicalGlyph:
    """Check-mark plus extent bar spanning a rectangle."""

    left: int
    top: int
    width: int
    height: int


@dataclass(frozen=True)
class BracketArc:
    """Vertical bracket stroke with inward serifs at both ends."""

    x: int
    y0: int
    y1: int
    opening: bool = True
    serif: int = 3


Stroke = HRule | VRule | Diagonal | RadicalGlyph | BracketArc


class StrokeError(ValueError):
    """A stroke reaches outside the canvas."""


def _set(pixels: np.ndarray, x: int, y: int) -> None:
    h, w = pixels.shape
    if not (0 <= x < w and 0 <= y < h):
        raise StrokeError(f"pixel ({x}, {y}) outside {w}x{h} canvas")
    pixels[y, x] = 0


def _draw_diagonal(pixels: np.ndarray, x0: int, y0: int, x1: int, y1: int) -> None:
    """One pixel per step along the major axis."""
    dx, dy = x1 - x0, y1 - y0
    steps = max(abs(dx), abs(dy))
    if steps == 0:
        _set(pixels, x0, y0)
        return
    for i in range(steps + 1):
        x = x0 + round(dx * i / steps)
        y = y0 + round(dy * i / steps)
        _set(pixels, x, y)


def synth_image(strokes: list[Stroke], width: int, height: int) -> RasterImage:
    pixels = np.full((height, width), 255, dtype=np.uint8)
    for stroke in strokes:
        if isinstance(stroke, HRule):
            for x in range(stroke.x0, stroke.x1 + 1):
                _set(pixels, x, stroke.y)
        elif isinstance(stroke, VRule):
            for y in range(stroke.y0, stroke.y1 + 1):
                _set(pixels, stroke.x, y)
        elif isinstance(stroke, Diagonal):
            _draw_diagonal(pixels, stroke.x0, stroke.y0, stroke.x1, stroke.y1)
        elif isinstance(stroke, RadicalGlyph):
            left, top = stroke.left, stroke.top
            right = left + stroke.width - 1
            bottom = top + stroke.height - 1
            tick_w = max(1, stroke.width // 6)
            mid = left + 2 * tick_w
            _draw_diagonal(pixels, left, (top + bottom) // 2, left + tick_w,
                           (top + bottom) // 2 + 1)
            _draw_diagonal(pixels, left + tick_w, (top + bottom) // 2 + 1, mid, bottom)
            _draw_diagonal(pixels, mid, bottom, mid + tick_w, top)
            for x in range(mid + tick_w, right + 1):
                _set(pixels, x, top)
        elif isinstance(stroke, BracketArc):
            for y in range(stroke.y0, stroke.y1 + 1):
                _set(pixels, stroke.x, y)
            direction = 1 if stroke.opening else -1
            for i in range(stroke.serif):
                _set(pixels, stroke.x + direction * i, stroke.y0)
                _set(pixels, stroke.x + direction * i, stroke.y1)
        else:
            raise TypeError(f"unknown stroke {stroke!r}")
    return RasterImage(pixels)
