"""Command parser and verbose hyperlinked output for the text interface.

Commands follow the conventions of text adventures: a verb plus an optional
argument, with bare directions acting as movement.  Output blocks interleave
plain prose with links; activating a link replays its recorded command, so a
scrolled-back description can be used to retrace earlier steps.
"""

from __future__ import annotations

import difflib
from dataclasses import dataclass, field

from . import navigator
from .navigator import Description, SessionState

PRIMARY_WORDS = ("left", "right", "up", "down")
VERBS = ("look", "play", "move", "switch", "goto", "help")

HELP_TEXT = (
    "Commands: look (optionally an element), play (optionally a direction "
    "or element), left/right/up/down (optionally refined, as in 'right up'), "
    "goto followed by an element, switch between text and graphical, help. "
    "Type a link number to activate it."
)


class CommandParseError(ValueError):
    pass


@dataclass(frozen=True)
class Command:
    verb: str
    primary: str | None = None
    secondary: str | None = None
    target: str | None = None


@dataclass(frozen=True)
class TextSpan:
    text: str


@dataclass(frozen=True)
class LinkSpan:
    label: str
    command: str
    link_id: int


Span = TextSpan | LinkSpan


@dataclass
class OutputBlock:
    spans: list[Span] = field(default_factory=list)

    def plain_text(self) -> str:
        return "".join(
            span.text if isinstance(span, TextSpan) else span.label
            for span in self.spans
        )

    def links(self) -> list[LinkSpan]:
        return [s for s in self.spans if isinstance(s, LinkSpan)]


def _secondary_for(primary: str, word: str) -> str:
    allowed = ("up", "down") if primary in ("left", "right") else ("left", "right")
    if word not in allowed:
        raise CommandParseError(
            f"cannot refine {primary!r} with {word!r}; use one of {', '.join(allowed)}"
        )
    return word


def parse_command(text: str) -> Command:
    """Parse one command line; case-insensitive, tolerant of extra spaces."""
    words = text.strip().lower().split()
    if not words:
        raise CommandParseError("empty command")
    head, rest = words[0], words[1:]

    if head in PRIMARY_WORDS:
        if rest:
            return Command("move", primary=head,
                           secondary=_secondary_for(head, rest[0]))
        return Command("move", primary=head)
    if head == "move":
        if not rest or rest[0] not in PRIMARY_WORDS:
            raise CommandParseError("move needs a direction")
        secondary = _secondary_for(rest[0], rest[1]) if len(rest) > 1 else None
        return Command("move", primary=rest[0], secondary=secondary)
    if head in ("look", "play", "goto"):
        target = " ".join(rest) if rest else None
        if head == "goto" and target is None:
            raise CommandParseError("goto needs an element")
        return Command(head, target=target)
    if head == "switch":
        target = rest[0] if rest else None
        if target not in (None, "text", "graphical"):
            raise CommandParseError("switch accepts 'text' or 'graphical'")
        return Command("switch", target=target)
    if head == "help":
        return Command("help")

    suggestion = difflib.get_close_matches(head, VERBS + PRIMARY_WORDS, n=1)
    hint = f" Did you mean {suggestion[0]!r}?" if suggestion else ""
    raise CommandParseError(f"unknown command {head!r}.{hint}")


def render_command(cmd: Command) -> str:
    """Canonical command string; parse_command inverts it."""
    if cmd.verb == "move":
        return cmd.primary + (f" {cmd.secondary}" if cmd.secondary else "")
    parts = [cmd.verb]
    if cmd.target:
        parts.append(cmd.target)
    return " ".join(parts)


class TextShell:
    """Owns link numbering and rendering on top of a navigation session."""

    def __init__(self, state: SessionState):
        self.state = state
        self._links: dict[int, str] = {}
        self._next_link = 1

    def _link(self, block_spans: list[Span], label: str, command: str) -> None:
        link_id = self._next_link
        self._next_link += 1
        self._links[link_id] = command
        block_spans.append(LinkSpan(label=label, command=command, link_id=link_id))

    def handle_line(self, line: str) -> OutputBlock:
        try:
            cmd = parse_command(line)
        except CommandParseError as exc:
            return OutputBlock([TextSpan(str(exc))])
        return self.execute(cmd)

    def execute(self, cmd: Command) -> OutputBlock:
        if cmd.verb == "help":
            return OutputBlock([TextSpan(HELP_TEXT)])
        if cmd.verb == "move":
            return self._do_move(cmd)
        if cmd.verb == "look":
            return self._do_look(cmd.target)
        if cmd.verb == "play":
            return self._do_play(cmd.target)
        if cmd.verb == "goto":
            return self._do_goto(cmd.target)
        if cmd.verb == "switch":
            return self._do_switch(cmd.target)
        return OutputBlock([TextSpan(f"unhandled verb {cmd.verb!r}")])

    def activate_link(self, link_id: int) -> OutputBlock:
        command = self._links.get(link_id)
        if command is None:
            return OutputBlock([TextSpan(f"There is no link {link_id}.")])
        return self.handle_line(command)

    # -- element name resolution ------------------------------------------

    def _resolve_element(self, name: str) -> int | list[int] | None:
        """Element id for a name; a list when ambiguous, None when unknown."""
        name = name.strip()
        if name.startswith("#"):
            try:
                eid = int(name[1:])
            except ValueError:
                return None
            return eid if self.state.bundle.has_element(eid) else None
        ordinal = None
        if name.endswith(")") and "(" in name:
            base, _, suffix = name.rpartition("(")
            try:
                ordinal = int(suffix[:-1])
                name = base.strip()
            except ValueError:
                ordinal = None
        matches = [el.id for el in self.state.bundle.elements
                   if el.text.lower() == name.lower()]
        if not matches:
            return None
        if ordinal is not None:
            if 1 <= ordinal <= len(matches):
                return matches[ordinal - 1]
            return None
        if len(matches) == 1:
            return matches[0]
        return matches

    def _ambiguity_block(self, name: str, matches: list[int], verb: str) -> OutputBlock:
        spans: list[Span] = [TextSpan(f'There are {len(matches)} elements called "{name}": ')]
        for i, eid in enumerate(matches, start=1):
            if i > 1:
                spans.append(TextSpan(", "))
            self._link(spans, f"{name} ({i})", f"{verb} #{eid}")
        spans.append(TextSpan("."))
        return OutputBlock(spans)

    # -- verbs --------------------------------------------------------------

    def _do_move(self, cmd: Command) -> OutputBlock:
        result = navigator.move(self.state, cmd.primary, cmd.secondary)
        self.state.drain_announcements()
        spans: list[Span] = []
        if result.new_focus is None:
            spans.append(TextSpan(result.announcements[0]))
        else:
            spans.append(TextSpan(f'Moved to "{result.announcements[0]}".'))
            for extra in result.announcements[1:]:
                spans.append(TextSpan(" " + extra))
        return OutputBlock(spans)

    def _do_goto(self, target: str) -> OutputBlock:
        resolved = self._resolve_element(target)
        if resolved is None:
            return OutputBlock([TextSpan(f'There is no element called "{target}".')])
        if isinstance(resolved, list):
            return self._ambiguity_block(target, resolved, "goto")
        result = navigator.goto(self.state, resolved)
        self.state.drain_announcements()
        spans: list[Span] = [TextSpan(f'Moved to "{result.announcements[0]}".')]
        for extra in result.announcements[1:]:
            spans.append(TextSpan(" " + extra))
        return OutputBlock(spans)

    def _do_look(self, target: str | None) -> OutputBlock:
        element_id: int | None = None
        if target is not None:
            resolved = self._resolve_element(target)
            if resolved is None:
                return OutputBlock([TextSpan(f'There is no element called "{target}".')])
            if isinstance(resolved, list):
                return self._ambiguity_block(target, resolved, "look")
            element_id = resolved
        description = navigator.describe_focus(self.state, element_id)
        return self._render_description(description)

    def _render_description(self, d: Description) -> OutputBlock:
        spans: list[Span] = []
        spans.append(TextSpan(f'"{d.text}"\n'))
        h, v = d.position
        spans.append(TextSpan(f"Position: {h} across, {v} down.\n"))
        if d.adjacency:
            spans.append(TextSpan(
                "From this element, the following elements can be reached: "))
            for i, (direction, eid, text) in enumerate(d.adjacency):
                if i:
                    spans.append(TextSpan(", "))
                label = f'{_direction_phrase(direction)}: "{text}"'
                self._link(spans, label, f"goto #{eid}")
            spans.append(TextSpan(".\n"))
        else:
            spans.append(TextSpan("No other elements can be reached from here.\n"))
        if d.graphics:
            spans.append(TextSpan("There is additional graphical content "))
            for i, direction in enumerate(d.graphics):
                if i:
                    spans.append(TextSpan(", " if i < len(d.graphics) - 1 else " and "))
                self._link(spans, direction, f"play {direction}")
            spans.append(TextSpan(".\n"))
        else:
            spans.append(TextSpan("There is no additional graphical content.\n"))
        self._link(spans, "Sonify this element", f"play #{d.element_id}")
        spans.append(TextSpan(".\n"))
        if d.line is not None:
            names = ", ".join(f'"{text}"' for _, text in d.line)
            spans.append(TextSpan(f"On this line: {names}.\n"))
        return OutputBlock(spans)

    def _do_play(self, target: str | None) -> OutputBlock:
        nav_target: str | int | None
        if target is None:
            nav_target = None
        elif target in ("left", "right", "up", "down"):
            nav_target = target
        else:
            resolved = self._resolve_element(target)
            if resolved is None:
                return OutputBlock([TextSpan(f'There is no element called "{target}".')])
            if isinstance(resolved, list):
                return self._ambiguity_block(target, resolved, "play")
            nav_target = resolved
        region, message = navigator.sonify_request(self.state, nav_target)
        if region is None:
            return OutputBlock([TextSpan(message)])
        self.state.sonify_queue.append(region)
        if isinstance(nav_target, int):
            what = f'element "{self.state.bundle.element(nav_target).text}"'
        elif nav_target is None:
            what = "the focus"
        else:
            what = f"the graphics {nav_target} of the focus"
        return OutputBlock([TextSpan(f"Playing {what}.")])

    def _do_switch(self, target: str | None) -> OutputBlock:
        mode = target
        if mode is None:
            mode = (navigator.GRAPHICAL_MODE
                    if self.state.mode == navigator.TEXT_MODE else navigator.TEXT_MODE)
        navigator.switch_mode(self.state, mode)
        return OutputBlock([TextSpan(f"Now in {mode} mode.")])


def _direction_phrase(direction) -> str:
    primary = direction.primary.capitalize()
    if direction.variant == "centre":
        return primary
    return f"{primary} {direction.variant}"
