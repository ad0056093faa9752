// @vitest-environment happy-dom
import { describe, expect, it } from "vitest";

import { AudioQueue, AudioContextLike } from "./pcm";
import { createOutputLog, createStatusBar } from "./render";
import { SocketLike, UiSession } from "./session";

class FakeSocket implements SocketLike {
  sent: string[] = [];
  closed = false;
  onmessage: ((event: { data: string }) => void) | null = null;
  onerror: ((event: unknown) => void) | null = null;
  onclose: ((event: unknown) => void) | null = null;

  send(data: string): void {
    this.sent.push(data);
  }

  close(): void {
    this.closed = true;
  }

  deliver(obj: unknown): void {
    this.onmessage?.({ data: JSON.stringify(obj) });
  }
}

function silentAudioContext(): AudioContextLike {
  return {
    destination: {} as AudioDestinationNode,
    createBuffer: (_c: number, frames: number, rate: number) =>
      ({ length: frames, sampleRate: rate, copyToChannel() {} }) as unknown as AudioBuffer,
    createBufferSource: () =>
      ({ buffer: null, connect() {}, start() {}, onended: null }) as unknown as AudioBufferSourceNode,
  };
}

function makeSession() {
  const socket = new FakeSocket();
  const log = createOutputLog();
  const statusBar = createStatusBar();
  const audio = new AudioQueue(silentAudioContext());
  const focuses: number[] = [];
  const session = new UiSession({
    socket,
    log,
    statusBar,
    audio,
    onFocus: (focus) => focuses.push(focus.element),
  });
  return { session, socket, log, statusBar, audio, focuses };
}

describe("UiSession", () => {
  it("renders the automatic first description with activatable links", () => {
    const { socket, log } = makeSession();
    socket.deliver({
      kind: "text-block",
      spans: [
        { kind: "text", text: '"x"\nPosition: 47 across, 23 down.\n' },
        { kind: "link", label: 'Right: "2"', command: "goto #7", link: 1 },
      ],
    });
    expect(log.textContent).toContain("Position: 47 across");
    const button = log.querySelector("button")!;
    expect(button.textContent).toBe('Right: "2"');
    button.click();
    expect(socket.sent).toEqual([JSON.stringify({ kind: "activate-link", link: 1 })]);
  });

  it("routes statuses to the live status bar", () => {
    const { socket, statusBar } = makeSession();
    socket.deliver({ kind: "status", text: "raised" });
    expect(statusBar.textContent).toBe("raised");
  });

  it("queues audio responses in arrival order", () => {
    const { socket, audio } = makeSession();
    const clip = {
      kind: "audio",
      sample_rate: 44100,
      channels: 2,
      encoding: "pcm16le-base64",
      duration: 0,
      data: btoa("\x00\x00\x00\x00"),
    };
    socket.deliver(clip);
    socket.deliver(clip);
    expect(audio.pending).toBe(2);
  });

  it("tracks the focus box and notifies", () => {
    const { socket, session, focuses } = makeSession();
    socket.deliver({ kind: "focus-changed", element: 4, bbox: [1, 2, 3, 4] });
    expect(session.lastFocus?.element).toBe(4);
    expect(focuses).toEqual([4]);
  });

  it("toggleMode alternates between the two interfaces", () => {
    const { session, socket } = makeSession();
    session.toggleMode();
    session.toggleMode();
    expect(socket.sent.map((s) => JSON.parse(s).mode)).toEqual(["graphical", "text"]);
  });

  it("reports malformed payloads in the status bar without crashing", () => {
    const { socket, statusBar } = makeSession();
    socket.onmessage?.({ data: "garbage" });
    expect(statusBar.textContent).toContain("protocol error");
  });

  it("reports connection failures", () => {
    const { socket, statusBar } = makeSession();
    socket.onerror?.({});
    expect(statusBar.textContent).toBe("connection error");
  });
});
