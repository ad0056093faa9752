"""Selection of raster sub-regions for sonification.

A directional region reaches from the focus element toward the nearest
visible element (or the image border) in one of the four primary directions;
a transition region covers the gap crossed when moving between two elements.
Regions carry their ink-pixel count so empty ones can be dropped early.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bundle import BBox, EquationBundle
from .dom import Dom, classify_direction, DegenerateDirectionError

# Row growth for sideways scans stops after this many focus heights.
GROWTH_LIMIT_FACTOR = 3


@dataclass(frozen=True)
class InkRegion:
    """A raster rectangle selected for sonification."""

    bbox: BBox
    direction: str | None
    ink_count: int


def _count_ink(bundle: EquationBundle, left: int, top: int, right: int, bottom: int) -> int:
    mask = bundle.image.ink_mask()[top:bottom, left:right]
    return int(np.count_nonzero(mask))


def region_from_bbox(
    bundle: EquationBundle, bbox: BBox, direction: str | None = None
) -> InkRegion:
    if bbox.right > bundle.image.width or bbox.bottom > bundle.image.height:
        raise ValueError(f"region bbox {bbox.to_list()} exceeds image bounds")
    count = _count_ink(bundle, bbox.left, bbox.top, bbox.right, bbox.bottom)
    return InkRegion(bbox=bbox, direction=direction, ink_count=count)


def directional_region(
    bundle: EquationBundle, dom: Dom, focus: int, direction: str
) -> InkRegion | None:
    """The sonifiable rectangle next to ``focus`` in one primary direction.

    Vertical scans keep the focus's horizontal span; sideways scans start
    from the focus's vertical span and then absorb adjacent ink-bearing rows.
    Returns None when the rectangle is empty or holds no ink.
    """
    if direction not in ("left", "up", "right", "down"):
        raise ValueError(f"invalid direction {direction!r}")
    dom.node(focus)  # raises KeyError for unknown ids
    f = bundle.element(focus).bbox
    width, height = bundle.image.width, bundle.image.height

    if direction in ("up", "down"):
        left, right = f.left, f.right
        if direction == "up":
            stop = 0
            for el in bundle.elements:
                if el.id == focus or el.bbox.horizontal_overlap(f) <= 0:
                    continue
                if el.bbox.bottom <= f.top:
                    stop = max(stop, el.bbox.bottom)
            top, bottom = stop, f.top
        else:
            stop = height
            for el in bundle.elements:
                if el.id == focus or el.bbox.horizontal_overlap(f) <= 0:
                    continue
                if el.bbox.top >= f.bottom:
                    stop = min(stop, el.bbox.top)
            top, bottom = f.bottom, stop
    else:
        if direction == "left":
            stop = 0
            for el in bundle.elements:
                if el.id == focus or el.bbox.vertical_overlap(f) <= 0:
                    continue
                if el.bbox.right <= f.left:
                    stop = max(stop, el.bbox.right)
            left, right = stop, f.left
        else:
            stop = width
            for el in bundle.elements:
                if el.id == focus or el.bbox.vertical_overlap(f) <= 0:
                    continue
                if el.bbox.left >= f.right:
                    stop = min(stop, el.bbox.left)
            left, right = f.right, stop
        top, bottom = f.top, f.bottom
        if left < right:
            top, bottom = _grow_rows(bundle, left, right, top, bottom, f.height)

    if left >= right or top >= bottom:
        return None
    bbox = BBox(left, top, right - left, bottom - top)
    region = region_from_bbox(bundle, bbox, direction)
    return region if region.ink_count > 0 else None


def _grow_rows(
    bundle: EquationBundle, left: int, right: int, top: int, bottom: int, focus_height: int
) -> tuple[int, int]:
    """Absorb neighbouring rows that still carry ink in the column span."""
    mask = bundle.image.ink_mask()
    limit = GROWTH_LIMIT_FACTOR * focus_height
    min_top = max(0, top - limit)
    max_bottom = min(bundle.image.height, bottom + limit)
    while top > min_top and mask[top - 1, left:right].any():
        top -= 1
    while bottom < max_bottom and mask[bottom, left:right].any():
        bottom += 1
    return top, bottom


def ink_bands(region: InkRegion, bundle: EquationBundle) -> int:
    """Number of maximal runs of consecutive ink-bearing rows in the region."""
    b = region.bbox
    if b.right > bundle.image.width or b.bottom > bundle.image.height:
        raise ValueError("region lies outside the image")
    rows = bundle.image.ink_mask()[b.top:b.bottom, b.left:b.right].any(axis=1)
    bands = 0
    previous = False
    for has_ink in rows:
        if has_ink and not previous:
            bands += 1
        previous = bool(has_ink)
    return bands


def transition_region(
    bundle: EquationBundle, from_id: int, to_id: int
) -> InkRegion | None:
    """The rectangle strictly between two element boxes, if it carries ink."""
    if from_id == to_id:
        raise ValueError("transition needs two distinct elements")
    a = bundle.element(from_id).bbox
    b = bundle.element(to_id).bbox
    try:
        primary = classify_direction(a, b).primary
    except DegenerateDirectionError:
        return None
    horizontal_gap = a.horizontal_overlap(b) <= 0
    vertical_gap = a.vertical_overlap(b) <= 0
    if primary in ("left", "right") and horizontal_gap:
        axis = "horizontal"
    elif primary in ("up", "down") and vertical_gap:
        axis = "vertical"
    elif horizontal_gap:
        axis = "horizontal"
    elif vertical_gap:
        axis = "vertical"
    else:
        return None
    if axis == "horizontal":
        left, right = min(a.right, b.right), max(a.left, b.left)
        top, bottom = min(a.top, b.top), max(a.bottom, b.bottom)
    else:
        left, right = min(a.left, b.left), max(a.right, b.right)
        top, bottom = min(a.bottom, b.bottom), max(a.top, b.top)
    if left >= right or top >= bottom:
        return None
    region = region_from_bbox(bundle, BBox(left, top, right - left, bottom - top), None)
    return region if region.ink_count > 0 else None


def has_graphics(bundle: EquationBundle, dom: Dom, focus: int) -> set[str]:
    """Primary directions in which a sonifiable region exists."""
    return {
        d
        for d in ("left", "up", "right", "down")
        if directional_region(bundle, dom, focus, d) is not None
    }
