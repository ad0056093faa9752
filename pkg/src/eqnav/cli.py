"""Command-line entry point.

Default mode is an interactive text session on stdio.  ``--ndjson`` switches
stdio to the raw newline-delimited message protocol, ``--serve`` exposes the
same protocol over a WebSocket for browser clients.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import navigator
from .dom import adjacency_listing
from .service import Session


def _render_block(spans: list[dict]) -> str:
    parts = []
    for span in spans:
        if span["kind"] == "text":
            parts.append(span["text"])
        else:
            parts.append(f"[{span['link']}] {span['label']}")
    return "".join(parts)


class _AudioDumper:
    def __init__(self, directory: str | None):
        self.directory = Path(directory) if directory else None
        self.counter = 0
        if self.directory:
            self.directory.mkdir(parents=True, exist_ok=True)

    def handle(self, response: dict) -> str:
        self.counter += 1
        note = f"[audio clip {self.counter}: {response['duration']:.3f}s]"
        if self.directory:
            from .audio import AudioClip
            import base64
            import numpy as np

            raw = base64.b64decode(response["data"])
            flat = np.frombuffer(raw, dtype="<i2").astype(float) / 32767.0
            clip = AudioClip(response["sample_rate"], flat.reshape(-1, 2))
            path = self.directory / f"{self.counter:04d}.wav"
            clip.write_wav(path)
            note += f" -> {path}"
        return note


def _print_responses(responses: list[dict], dumper: _AudioDumper) -> None:
    for response in responses:
        kind = response["kind"]
        if kind == "text-block":
            text = _render_block(response["spans"])
            sys.stdout.write(text.rstrip("\n") + "\n")
        elif kind == "status":
            sys.stdout.write(f"* {response['text']}\n")
        elif kind == "focus-changed":
            sys.stdout.write(f"* focus: element {response['element']}\n")
        elif kind == "audio":
            sys.stdout.write(f"* {dumper.handle(response)}\n")
    sys.stdout.flush()


def _interactive_loop(session: Session, dumper: _AudioDumper) -> None:
    _print_responses(session.take_initial(), dumper)
    while True:
        try:
            line = input("> ")
        except EOFError:
            break
        line = line.strip()
        if not line:
            continue
        if line.lower() in ("quit", "exit"):
            break
        _print_responses(session.handle({"kind": "command", "text": line}), dumper)


def _ndjson_loop(session: Session) -> None:
    for response in session.take_initial():
        sys.stdout.write(json.dumps(response) + "\n")
    sys.stdout.flush()
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
        except json.JSONDecodeError as exc:
            responses = [{"kind": "status", "text": f"error: {exc}"}]
        else:
            responses = session.handle(request)
        for response in responses:
            sys.stdout.write(json.dumps(response) + "\n")
        sys.stdout.flush()


def build_app(bundle_path: str, static_dir: str | None = None):
    """FastAPI application serving the session protocol over a WebSocket."""
    from .webapp import build_app as _build

    return _build(bundle_path, static_dir=static_dir)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="eqnav",
        description="Explore a typeset equation without seeing it.",
    )
    parser.add_argument("--bundle", required=True, help="equation bundle file")
    parser.add_argument("--serve", type=int, metavar="PORT",
                        help="serve the WebSocket protocol on this port")
    parser.add_argument("--static", metavar="DIR",
                        help="also serve a static client from this directory")
    parser.add_argument("--mode", choices=["text", "graphical"], default="text",
                        help="initial interface mode")
    parser.add_argument("--ndjson", action="store_true",
                        help="speak the raw message protocol on stdio")
    parser.add_argument("--dump-audio", metavar="DIR",
                        help="write each emitted clip as a numbered WAV file")
    parser.add_argument("--dump-dom", action="store_true",
                        help="print the adjacency listing and exit")
    args = parser.parse_args(argv)

    if args.dump_dom:
        from .bundle import load_bundle
        from .dom import build_dom

        bundle = load_bundle(args.bundle)
        sys.stdout.write(adjacency_listing(build_dom(bundle), bundle))
        return 0

    if args.serve is not None:
        import uvicorn

        app = build_app(args.bundle, static_dir=args.static)
        uvicorn.run(app, host="127.0.0.1", port=args.serve)
        return 0

    session = Session.open(args.bundle)
    if args.mode == "graphical":
        session.handle({"kind": "mode", "mode": navigator.GRAPHICAL_MODE})
    if args.ndjson:
        _ndjson_loop(session)
    else:
        _interactive_loop(session, _AudioDumper(args.dump_audio))
    return 0


if __name__ == "__main__":
    sys.exit(main())
