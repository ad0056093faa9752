"""Spatial document model: a directed graph over the textual elements.

Every element becomes a node with up to twelve outgoing edge slots, one per
direction (four primaries, each with three variants).  Edges connect mutually
visible neighbours, nearest neighbour winning each slot.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from statistics import median

from .bundle import BBox, EquationBundle, TextElement, center_distance

log = logging.getLogger(__name__)

# Variant band: the minor axis counts as "centre" while it stays within this
# fraction of the major axis.
CENTRE_RATIO = 0.25

# Elements whose bbox tops differ by less than this fraction of the median
# element height share a top band when picking the starting focus.
TOP_BAND_RATIO = 0.25


class DegenerateDirectionError(ValueError):
    """Two boxes share a center, so no direction can be assigned."""


class Direction12(Enum):
    """Four primary directions, each with three secondary variants."""

    LEFT_UP = ("left", "up")
    LEFT_CENTRE = ("left", "centre")
    LEFT_DOWN = ("left", "down")
    RIGHT_UP = ("right", "up")
    RIGHT_CENTRE = ("right", "centre")
    RIGHT_DOWN = ("right", "down")
    UP_LEFT = ("up", "left")
    UP_CENTRE = ("up", "centre")
    UP_RIGHT = ("up", "right")
    DOWN_LEFT = ("down", "left")
    DOWN_CENTRE = ("down", "centre")
    DOWN_RIGHT = ("down", "right")

    @property
    def primary(self) -> str:
        return self.value[0]

    @property
    def variant(self) -> str:
        return self.value[1]

    @property
    def label(self) -> str:
        return f"{self.value[0]}-{self.value[1]}"

    @classmethod
    def from_parts(cls, primary: str, variant: str) -> "Direction12":
        for member in cls:
            if member.value == (primary, variant):
                return member
        raise ValueError(f"no direction {primary!r}/{variant!r}")


PRIMARIES = ("left", "up", "right", "down")

# Stable ordering used by the debug listing and all iteration.
DIRECTION_ORDER = (
    Direction12.LEFT_UP,
    Direction12.LEFT_CENTRE,
    Direction12.LEFT_DOWN,
    Direction12.UP_LEFT,
    Direction12.UP_CENTRE,
    Direction12.UP_RIGHT,
    Direction12.RIGHT_UP,
    Direction12.RIGHT_CENTRE,
    Direction12.RIGHT_DOWN,
    Direction12.DOWN_LEFT,
    Direction12.DOWN_CENTRE,
    Direction12.DOWN_RIGHT,
)


def variant_word(primary: str, sign: str) -> str:
    """Translate a minus/centre/plus secondary into its direction word."""
    if sign == "centre":
        return "centre"
    if primary in ("left", "right"):
        return "up" if sign == "minus" else "down"
    return "left" if sign == "minus" else "right"


def classify_direction(a: BBox, b: BBox) -> Direction12:
    """Direction of b as seen from a, judged from bbox centers."""
    dx = b.cx - a.cx
    dy = b.cy - a.cy
    if dx == 0 and dy == 0:
        raise DegenerateDirectionError("boxes share a center point")
    if abs(dx) >= abs(dy):
        primary = "right" if dx > 0 else "left"
        major, minor = dx, dy
        minus, plus = "up", "down"
    else:
        primary = "down" if dy > 0 else "up"
        major, minor = dy, dx
        minus, plus = "left", "right"
    if abs(minor) <= CENTRE_RATIO * abs(major):
        variant = "centre"
    else:
        variant = minus if minor < 0 else plus
    return Direction12.from_parts(primary, variant)


def _segment_intersects_box(
    x1: float, y1: float, x2: float, y2: float, box: BBox
) -> bool:
    """Liang-Barsky clip of the open segment (x1,y1)-(x2,y2) against box."""
    t0, t1 = 0.0, 1.0
    dx = x2 - x1
    dy = y2 - y1
    for p, q in (
        (-dx, x1 - box.left),
        (dx, box.right - x1),
        (-dy, y1 - box.top),
        (dy, box.bottom - y1),
    ):
        if p == 0:
            if q < 0:
                return False
        else:
            r = q / p
            if p < 0:
                if r > t1:
                    return False
                if r > t0:
                    t0 = r
            else:
                if r < t0:
                    return False
                if r < t1:
                    t1 = r
    return t1 > 0.0 and t0 < 1.0


def line_of_sight(a: TextElement, b: TextElement, bundle: EquationBundle) -> bool:
    """True if no third element's bbox blocks the segment between centers."""
    if a.id == b.id:
        raise ValueError("line of sight requires two distinct elements")
    ax, ay = a.bbox.center()
    bx, by = b.bbox.center()
    for other in bundle.elements:
        if other.id in (a.id, b.id):
            continue
        if _segment_intersects_box(ax, ay, bx, by, other.bbox):
            return False
    return True


@dataclass
class DomNode:
    element_id: int
    slots: dict[Direction12, int]

    def neighbor(self, direction: Direction12) -> int | None:
        return self.slots.get(direction)


@dataclass
class Dom:
    nodes: dict[int, DomNode]
    initial_focus: int

    def node(self, element_id: int) -> DomNode:
        try:
            return self.nodes[element_id]
        except KeyError:
            raise KeyError(f"no node for element {element_id}") from None

    def undirected_edges(self) -> set[frozenset[int]]:
        edges: set[frozenset[int]] = set()
        for node in self.nodes.values():
            for target in node.slots.values():
                edges.add(frozenset((node.element_id, target)))
        return edges


def build_dom(bundle: EquationBundle) -> Dom:
    """Connect every pair of mutually visible elements, nearest per slot."""
    nodes = {el.id: DomNode(el.id, {}) for el in bundle.elements}
    best_dist: dict[tuple[int, Direction12], float] = {}
    sight_cache: dict[frozenset[int], bool] = {}
    for e1 in bundle.elements:
        for e2 in bundle.elements:
            if e1.id == e2.id:
                continue
            pair = frozenset((e1.id, e2.id))
            visible = sight_cache.get(pair)
            if visible is None:
                visible = line_of_sight(e1, e2, bundle)
                sight_cache[pair] = visible
            if not visible:
                continue
            try:
                direction = classify_direction(e1.bbox, e2.bbox)
            except DegenerateDirectionError:
                log.warning(
                    "elements %d and %d share a center; pair skipped", e1.id, e2.id
                )
                continue
            dist = center_distance(e1.bbox, e2.bbox)
            key = (e1.id, direction)
            if key not in best_dist or dist < best_dist[key]:
                best_dist[key] = dist
                nodes[e1.id].slots[direction] = e2.id
    return Dom(nodes=nodes, initial_focus=_top_left_element(bundle))


def _top_left_element(bundle: EquationBundle) -> int:
    heights = [el.bbox.height for el in bundle.elements]
    threshold = TOP_BAND_RATIO * median(heights)
    min_top = min(el.bbox.top for el in bundle.elements)
    band = [el for el in bundle.elements if el.bbox.top - min_top < max(threshold, 1)]
    band.sort(key=lambda el: (el.bbox.left, el.id))
    return band[0].id


def initial_focus(dom: Dom, bundle: EquationBundle) -> int:
    """The top-left element: topmost band first, then leftmost, then lowest id."""
    del dom  # focus depends on geometry only; kept in the signature for symmetry
    return _top_left_element(bundle)


def adjacency_listing(dom: Dom, bundle: EquationBundle) -> str:
    """Plain-text adjacency dump, one line per node, stable ordering."""
    lines = []
    for element_id in sorted(dom.nodes):
        node = dom.nodes[element_id]
        text = bundle.element(element_id).text
        parts = [
            f"{d.label}→{node.slots[d]}" for d in DIRECTION_ORDER if d in node.slots
        ]
        lines.append(f'{element_id} "{text}": ' + ", ".join(parts))
    return "\n".join(lines) + "\n"


def nearest_distance_map(bundle: EquationBundle) -> dict[tuple[int, Direction12], float]:
    """Brute-force map of the closest visible candidate per (node, slot).

    Test helper for the distance-priority property; mirrors build_dom without
    sharing its slot-assignment code path.
    """
    out: dict[tuple[int, Direction12], float] = {}
    for e1 in bundle.elements:
        for e2 in bundle.elements:
            if e1.id == e2.id or not line_of_sight(e1, e2, bundle):
                continue
            try:
                direction = classify_direction(e1.bbox, e2.bbox)
            except DegenerateDirectionError:
                continue
            d = center_distance(e1.bbox, e2.bbox)
            key = (e1.id, direction)
            if key not in out or d < out[key]:
                out[key] = d
    return out
