"""Focus state machine shared by the command and cursor interfaces.

Movement resolves direction slots on the spatial graph, produces short spoken
announcements, and queues the ink regions that should be heard: the gap
crossed by the move first, then (in cursor mode) the shape of the new focus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from statistics import median

from .bundle import EquationBundle, normalized_position
from .dom import Dom, Direction12, variant_word
from .regions import (
    InkRegion,
    directional_region,
    has_graphics,
    region_from_bbox,
    transition_region,
)

TEXT_MODE = "text"
GRAPHICAL_MODE = "graphical"

NOTHING_THAT_WAY = "There is nothing that way."

# Slot preference per cursor key: sideways keys try the upward variant first,
# vertical keys the leftward variant first.
CURSOR_PRIORITY: dict[str, tuple[Direction12, Direction12, Direction12]] = {
    "right": (Direction12.RIGHT_UP, Direction12.RIGHT_CENTRE, Direction12.RIGHT_DOWN),
    "left": (Direction12.LEFT_UP, Direction12.LEFT_CENTRE, Direction12.LEFT_DOWN),
    "up": (Direction12.UP_LEFT, Direction12.UP_CENTRE, Direction12.UP_RIGHT),
    "down": (Direction12.DOWN_LEFT, Direction12.DOWN_CENTRE, Direction12.DOWN_RIGHT),
}

# Text-mode fallback when no secondary variant is given.
TEXT_FALLBACK = ("centre", "minus", "plus")


def line_bands(bundle: EquationBundle) -> list[list[int]]:
    """Group elements into lines by vertical-center proximity.

    Consecutive centers closer than half the median element height belong to
    the same line.
    """
    threshold = 0.5 * median(el.bbox.height for el in bundle.elements)
    ordered = sorted(bundle.elements, key=lambda el: (el.bbox.cy, el.bbox.left, el.id))
    bands: list[list[int]] = []
    previous_cy: float | None = None
    for el in ordered:
        if previous_cy is None or el.bbox.cy - previous_cy > threshold:
            bands.append([])
        bands[-1].append(el.id)
        previous_cy = el.bbox.cy
    for band in bands:
        band.sort(key=lambda eid: (bundle.element(eid).bbox.left, eid))
    return bands


@dataclass
class SessionState:
    bundle: EquationBundle
    dom: Dom
    focus: int
    mode: str = TEXT_MODE
    line_of: dict[int, int] = field(default_factory=dict)
    current_line: int = 0
    announcements: list[str] = field(default_factory=list)
    sonify_queue: list[InkRegion] = field(default_factory=list)

    @classmethod
    def create(cls, bundle: EquationBundle, dom: Dom) -> "SessionState":
        bands = line_bands(bundle)
        line_of = {eid: i for i, band in enumerate(bands) for eid in band}
        focus = dom.initial_focus
        return cls(bundle=bundle, dom=dom, focus=focus,
                   line_of=line_of, current_line=line_of[focus])

    def line_members(self, line_index: int | None = None) -> list[int]:
        index = self.current_line if line_index is None else line_index
        return sorted(
            (eid for eid, li in self.line_of.items() if li == index),
            key=lambda eid: (self.bundle.element(eid).bbox.left, eid),
        )

    def drain_announcements(self) -> list[str]:
        out, self.announcements = self.announcements, []
        return out

    def drain_sonify_queue(self) -> list[InkRegion]:
        out, self.sonify_queue = self.sonify_queue, []
        return out


@dataclass
class MoveResult:
    new_focus: int | None
    announcements: list[str]
    regions: list[InkRegion]
    line_change: int | None = None


@dataclass
class Description:
    element_id: int
    text: str
    position: tuple[int, int]
    adjacency: list[tuple[Direction12, int, str]]
    graphics: list[str]
    line: list[tuple[int, str]] | None


def _focus_region(state: SessionState, element_id: int) -> InkRegion:
    bbox = state.bundle.element(element_id).bbox
    return region_from_bbox(state.bundle, bbox, None)


def _note_line_change(state: SessionState, result: MoveResult) -> None:
    new_line = state.line_of[state.focus]
    if new_line != state.current_line:
        state.current_line = new_line
        count = len(state.line_members())
        result.line_change = count
        plural = "s" if count != 1 else ""
        message = f"New line with {count} element{plural}."
        result.announcements.append(message)


def move(state: SessionState, primary: str, secondary: str | None = None) -> MoveResult:
    """Text-mode move; an explicit secondary follows exactly that slot."""
    if primary not in CURSOR_PRIORITY:
        raise ValueError(f"invalid direction {primary!r}")
    node = state.dom.node(state.focus)
    target: int | None = None
    if secondary is not None:
        direction = Direction12.from_parts(primary, secondary)
        target = node.neighbor(direction)
    else:
        for sign in TEXT_FALLBACK:
            direction = Direction12.from_parts(primary, variant_word(primary, sign))
            target = node.neighbor(direction)
            if target is not None:
                break
    if target is None:
        result = MoveResult(None, [NOTHING_THAT_WAY], [])
        state.announcements.extend(result.announcements)
        return result
    transit = transition_region(state.bundle, state.focus, target)
    state.focus = target
    result = MoveResult(target, [state.bundle.element(target).text],
                        [transit] if transit else [])
    _note_line_change(state, result)
    state.announcements.extend(result.announcements)
    state.sonify_queue.extend(result.regions)
    return result


def cursor_move(state: SessionState, arrow: str) -> MoveResult:
    """Cursor-key move with slot preference and position-shift announcements."""
    if arrow not in CURSOR_PRIORITY:
        raise ValueError(f"invalid arrow {arrow!r}")
    node = state.dom.node(state.focus)
    target: int | None = None
    for direction in CURSOR_PRIORITY[arrow]:
        target = node.neighbor(direction)
        if target is not None:
            break
    if target is None:
        result = MoveResult(None, [NOTHING_THAT_WAY], [])
        state.announcements.extend(result.announcements)
        return result

    old = state.bundle.element(state.focus).bbox
    new = state.bundle.element(target).bbox
    announcements: list[str] = []
    if arrow in ("left", "right"):
        dy = new.cy - old.cy
        if dy < -old.height / 2:
            announcements.append("raised")
        elif dy > old.height / 2:
            announcements.append("lowered")
    else:
        dx = new.cx - old.cx
        if dx < -old.width / 2:
            announcements.append("shifted left")
        elif dx > old.width / 2:
            announcements.append("shifted right")
    announcements.append(state.bundle.element(target).text)

    transit = transition_region(state.bundle, state.focus, target)
    state.focus = target
    state.current_line = state.line_of[target]
    regions = ([transit] if transit else []) + [_focus_region(state, target)]
    result = MoveResult(target, announcements, regions)
    state.announcements.extend(announcements)
    state.sonify_queue.extend(regions)
    return result


def describe_focus(state: SessionState, element_id: int | None = None) -> Description:
    """Everything the reader is told about an element.

    The same-line listing is only included for the implicit focus form.
    """
    implicit = element_id is None
    target = state.focus if implicit else element_id
    element = state.bundle.element(target)
    adjacency = []
    node = state.dom.node(target)
    from .dom import DIRECTION_ORDER

    for direction in DIRECTION_ORDER:
        neighbor = node.neighbor(direction)
        if neighbor is not None:
            adjacency.append((direction, neighbor, state.bundle.element(neighbor).text))
    graphics = [d for d in ("left", "up", "right", "down")
                if d in has_graphics(state.bundle, state.dom, target)]
    line = None
    if implicit:
        line = [(eid, state.bundle.element(eid).text)
                for eid in state.line_members(state.line_of[target])]
    return Description(
        element_id=target,
        text=element.text,
        position=normalized_position(element, state.bundle),
        adjacency=adjacency,
        graphics=graphics,
        line=line,
    )


def sonify_request(
    state: SessionState, target: str | int | None = None
) -> tuple[InkRegion | None, str | None]:
    """Resolve a play request into a region, or an explanatory message."""
    if target is None:
        return _focus_region(state, state.focus), None
    if isinstance(target, int):
        if not state.bundle.has_element(target):
            raise KeyError(f"no element {target}")
        return _focus_region(state, target), None
    if target not in CURSOR_PRIORITY:
        raise ValueError(f"invalid play target {target!r}")
    region = directional_region(state.bundle, state.dom, state.focus, target)
    if region is None:
        return None, f"There is no graphical content {target} of the focus."
    return region, None


def goto(state: SessionState, element_id: int) -> MoveResult:
    """Jump straight to an element (used by activated links)."""
    if not state.bundle.has_element(element_id):
        raise KeyError(f"no element {element_id}")
    state.focus = element_id
    result = MoveResult(element_id, [state.bundle.element(element_id).text], [])
    _note_line_change(state, result)
    state.announcements.extend(result.announcements)
    return result


def switch_mode(state: SessionState, mode: str) -> SessionState:
    """Switch interfaces; focus survives, cursor mode re-presents it."""
    if mode not in (TEXT_MODE, GRAPHICAL_MODE):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == state.mode:
        return state
    state.mode = mode
    if mode == GRAPHICAL_MODE:
        state.announcements.append(state.bundle.element(state.focus).text)
        state.sonify_queue.append(_focus_region(state, state.focus))
    return state
