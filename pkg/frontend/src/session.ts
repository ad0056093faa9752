// Session wiring: connects to the service socket, routes responses to the
// log, status bar, focus ring and audio queue. All navigation logic lives on
// the server; this class only renders what it is told.

import { AudioQueue } from "./pcm";
import {
  encodeRequest,
  parseResponse,
  Request,
  Response,
  FocusChangedResponse,
} from "./protocol";
import { renderBlock, showStatus } from "./render";

// Subset of WebSocket the session uses; tests substitute a fake.
export interface SocketLike {
  send(data: string): void;
  close(): void;
  onmessage: ((event: { data: string }) => void) | null;
  onerror: ((event: unknown) => void) | null;
  onclose: ((event: unknown) => void) | null;
}

export interface UiSessionOptions {
  socket: SocketLike;
  log: HTMLElement;
  statusBar: HTMLElement;
  audio: AudioQueue;
  onFocus?: (focus: FocusChangedResponse) => void;
}

export class UiSession {
  mode: "text" | "graphical" = "text";
  lastFocus: FocusChangedResponse | null = null;

  constructor(private options: UiSessionOptions) {
    options.socket.onmessage = (event) => this.receive(event.data);
    options.socket.onerror = () => showStatus(options.statusBar, "connection error");
    options.socket.onclose = () => showStatus(options.statusBar, "disconnected");
  }

  send(request: Request): void {
    if (request.kind === "mode") {
      this.mode = request.mode;
    }
    this.options.socket.send(encodeRequest(request));
  }

  sendCommand(text: string): void {
    this.send({ kind: "command", text });
  }

  activateLink(linkId: number): void {
    this.send({ kind: "activate-link", link: linkId });
  }

  toggleMode(): void {
    this.send({ kind: "mode", mode: this.mode === "text" ? "graphical" : "text" });
  }

  receive(raw: string): void {
    let response: Response;
    try {
      response = parseResponse(raw);
    } catch (error) {
      showStatus(this.options.statusBar, `protocol error: ${String(error)}`);
      return;
    }
    switch (response.kind) {
      case "text-block":
        renderBlock(response, this.options.log, (id) => this.activateLink(id));
        break;
      case "status":
        showStatus(this.options.statusBar, response.text);
        break;
      case "audio":
        this.options.audio.enqueue(response);
        break;
      case "focus-changed":
        this.lastFocus = response;
        this.options.onFocus?.(response);
        break;
    }
  }

  close(): void {
    this.options.socket.close();
  }
}
