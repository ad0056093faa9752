"""Session hosting behind a small message protocol.

One session owns one bundle plus its navigation state.  Requests arrive as
JSON objects (over stdio lines or a WebSocket); each one yields an ordered
list of responses: text blocks, short status strings, focus updates and
base64-encoded PCM audio.  Handling is serialized per session.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import navigator
from .audio import AudioClip, SonifyParams, sonify_column, sonify_region, sonify_segment
from .bundle import EquationBundle, load_bundle
from .dom import Dom, build_dom
from .navigator import SessionState
from .shell import LinkSpan, OutputBlock, TextSpan, TextShell

ARROW_KEYS = {
    "ArrowLeft": "left",
    "ArrowRight": "right",
    "ArrowUp": "up",
    "ArrowDown": "down",
}


@dataclass
class Request:
    kind: str
    payload: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, obj: dict[str, Any]) -> "Request":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError("request must be an object with a 'kind' field")
        kind = obj["kind"]
        if kind not in ("command", "key", "pointer", "mode", "activate-link"):
            raise ValueError(f"unknown request kind {kind!r}")
        payload = {k: v for k, v in obj.items() if k != "kind"}
        return cls(kind=kind, payload=payload)


def block_to_dict(block: OutputBlock) -> dict[str, Any]:
    spans: list[dict[str, Any]] = []
    for span in block.spans:
        if isinstance(span, TextSpan):
            spans.append({"kind": "text", "text": span.text})
        elif isinstance(span, LinkSpan):
            spans.append({
                "kind": "link",
                "label": span.label,
                "command": span.command,
                "link": span.link_id,
            })
    return {"kind": "text-block", "spans": spans}


def audio_to_dict(clip: AudioClip) -> dict[str, Any]:
    return {
        "kind": "audio",
        "sample_rate": clip.sample_rate,
        "channels": 2,
        "encoding": "pcm16le-base64",
        "duration": clip.duration,
        "data": clip.to_pcm16_base64(),
    }


class Session:
    """A single reader's state plus the machinery to answer requests."""

    def __init__(self, bundle: EquationBundle, params: SonifyParams | None = None):
        self.bundle = bundle
        self.dom: Dom = build_dom(bundle)
        self.state: SessionState = SessionState.create(bundle, self.dom)
        self.shell = TextShell(self.state)
        self.params = params or SonifyParams()
        self._lock = threading.Lock()
        self._initial = self._auto_look()

    @classmethod
    def open(cls, path: str | Path, params: SonifyParams | None = None) -> "Session":
        return cls(load_bundle(path), params=params)

    def _auto_look(self) -> list[dict[str, Any]]:
        block = self.shell.handle_line("look")
        return [block_to_dict(block)] + self._drain_audio()

    def take_initial(self) -> list[dict[str, Any]]:
        out, self._initial = self._initial, []
        return out

    def _drain_audio(self) -> list[dict[str, Any]]:
        responses = []
        for region in self.state.drain_sonify_queue():
            responses.append(audio_to_dict(sonify_region(self.bundle, region, self.params)))
        return responses

    def _focus_changed(self) -> dict[str, Any]:
        bbox = self.bundle.element(self.state.focus).bbox
        return {
            "kind": "focus-changed",
            "element": self.state.focus,
            "bbox": bbox.to_list(),
        }

    def handle(self, request: Request | dict[str, Any]) -> list[dict[str, Any]]:
        if isinstance(request, dict):
            try:
                request = Request.from_dict(request)
            except ValueError as exc:
                return [{"kind": "status", "text": f"error: {exc}"}]
        with self._lock:
            try:
                return self._dispatch(request)
            except (KeyError, ValueError) as exc:
                return [{"kind": "status", "text": f"error: {exc}"}]

    def _dispatch(self, request: Request) -> list[dict[str, Any]]:
        if request.kind == "command":
            text = str(request.payload.get("text", "")).strip()
            if text.isdigit():
                return self._activate(int(text))
            block = self.shell.handle_line(text)
            self.state.drain_announcements()
            return [block_to_dict(block)] + self._drain_audio()
        if request.kind == "activate-link":
            return self._activate(int(request.payload["link"]))
        if request.kind == "key":
            return self._handle_key(str(request.payload.get("key", "")))
        if request.kind == "mode":
            return self._handle_mode(str(request.payload.get("mode", "")))
        if request.kind == "pointer":
            return self._handle_pointer(request.payload.get("points"))
        raise ValueError(f"unknown request kind {request.kind!r}")

    def _activate(self, link_id: int) -> list[dict[str, Any]]:
        block = self.shell.activate_link(link_id)
        self.state.drain_announcements()
        return [block_to_dict(block)] + self._drain_audio()

    def _handle_key(self, key: str) -> list[dict[str, Any]]:
        if key not in ARROW_KEYS:
            return [{"kind": "status", "text": f"error: unsupported key {key!r}"}]
        if self.state.mode != navigator.GRAPHICAL_MODE:
            return [{"kind": "status",
                     "text": "error: cursor keys need graphical mode"}]
        result = navigator.cursor_move(self.state, ARROW_KEYS[key])
        self.state.drain_announcements()
        responses: list[dict[str, Any]] = []
        if result.new_focus is not None:
            responses.append(self._focus_changed())
        responses.extend({"kind": "status", "text": text}
                         for text in result.announcements)
        responses.extend(self._drain_audio())
        return responses

    def _handle_mode(self, mode: str) -> list[dict[str, Any]]:
        changed = mode != self.state.mode
        navigator.switch_mode(self.state, mode)
        responses: list[dict[str, Any]] = [
            {"kind": "status", "text": f"{mode} mode"}
        ]
        if changed and mode == navigator.GRAPHICAL_MODE:
            responses.append(self._focus_changed())
            responses.extend({"kind": "status", "text": text}
                             for text in self.state.drain_announcements())
            responses.extend(self._drain_audio())
        return responses

    def _handle_pointer(self, points: Any) -> list[dict[str, Any]]:
        if not isinstance(points, list) or not 1 <= len(points) <= 2:
            raise ValueError("pointer requests need one or two points")
        coords = []
        for point in points:
            x, y = int(point[0]), int(point[1])
            if not (0 <= x < self.bundle.image.width
                    and 0 <= y < self.bundle.image.height):
                raise ValueError(f"pointer ({x}, {y}) outside the image")
            coords.append((x, y))
        if len(coords) == 1:
            x, y = coords[0]
            clip = sonify_column(self.bundle, x, emphasis_center=y, params=self.params)
        else:
            if coords[0] == coords[1]:
                raise ValueError("two-point gesture needs distinct points")
            clip = sonify_segment(self.bundle, coords[0], coords[1], params=self.params)
        return [audio_to_dict(clip)]
