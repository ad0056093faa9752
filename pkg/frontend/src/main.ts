// Application bootstrap: builds the page, opens the socket, and wires
// keyboard/touch capture to the session. The equation raster itself is never
// drawn unless the developer toggle is switched on.

import { letterbox } from "./coords";
import { CanvasInput } from "./input";
import { AudioQueue } from "./pcm";
import { createOutputLog, createStatusBar, showStatus } from "./render";
import { UiSession } from "./session";

const IMAGE_WIDTH = 300;
const IMAGE_HEIGHT = 160;

export function start(root: HTMLElement, socketUrl: string): UiSession {
  const log = createOutputLog();
  const statusBar = createStatusBar();

  const form = document.createElement("form");
  const field = document.createElement("input");
  field.type = "text";
  field.setAttribute("aria-label", "Command");
  const submit = document.createElement("button");
  submit.type = "submit";
  submit.textContent = "Run";
  form.append(field, submit);

  const canvas = document.createElement("canvas");
  canvas.width = 600;
  canvas.height = 320;
  canvas.tabIndex = 0;
  canvas.setAttribute("role", "application");
  canvas.setAttribute(
    "aria-label",
    "Equation canvas. Use the arrow keys to move, M to switch modes, touch to hear columns.",
  );

  const devToggle = document.createElement("button");
  devToggle.type = "button";
  devToggle.textContent = "Show raster (developer)";
  devToggle.id = "dev-raster-toggle";

  root.append(log, form, canvas, statusBar, devToggle);

  const context = new AudioContext();
  const audio = new AudioQueue(context);
  const socket = new WebSocket(socketUrl) as unknown as import("./session").SocketLike;
  const session = new UiSession({
    socket,
    log,
    statusBar,
    audio,
    onFocus: (focus) => drawFocusRing(canvas, focus.bbox),
  });

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (field.value.trim()) {
      session.sendCommand(field.value.trim());
      field.value = "";
    }
  });

  const input = new CanvasInput({
    imageWidth: IMAGE_WIDTH,
    imageHeight: IMAGE_HEIGHT,
    box: letterbox(canvas.width, canvas.height, IMAGE_WIDTH, IMAGE_HEIGHT),
    send: (request) => session.send(request),
    toggleMode: () => session.toggleMode(),
  });

  canvas.addEventListener("keydown", (event) => input.handleKey(event));
  canvas.addEventListener("touchmove", (event) => {
    event.preventDefault();
    const rect = canvas.getBoundingClientRect();
    const points: [number, number][] = [];
    for (let i = 0; i < Math.min(event.touches.length, 2); i++) {
      const touch = event.touches.item(i)!;
      points.push([touch.clientX - rect.left, touch.clientY - rect.top]);
    }
    input.handlePointer(points);
  });
  canvas.addEventListener("mousemove", (event) => {
    if (event.buttons & 1) {
      const rect = canvas.getBoundingClientRect();
      input.handlePointer([[event.clientX - rect.left, event.clientY - rect.top]]);
    }
  });

  devToggle.addEventListener("click", () => {
    canvas.dataset.showRaster = canvas.dataset.showRaster === "on" ? "off" : "on";
    showStatus(statusBar, `raster display ${canvas.dataset.showRaster}`);
  });

  return session;
}

function drawFocusRing(canvas: HTMLCanvasElement, bbox: [number, number, number, number]): void {
  const context = canvas.getContext("2d");
  if (!context) {
    return;
  }
  const box = letterbox(canvas.width, canvas.height, IMAGE_WIDTH, IMAGE_HEIGHT);
  context.clearRect(0, 0, canvas.width, canvas.height);
  // only the focus ring is drawn; the raster stays hidden by default
  context.strokeStyle = "#3b82f6";
  context.lineWidth = 2;
  context.strokeRect(
    box.offsetX + bbox[0] * box.scale,
    box.offsetY + bbox[1] * box.scale,
    bbox[2] * box.scale,
    bbox[3] * box.scale,
  );
}

declare global {
  interface Window {
    eqnavStart?: typeof start;
  }
}

if (typeof window !== "undefined") {
  window.eqnavStart = start;
}
