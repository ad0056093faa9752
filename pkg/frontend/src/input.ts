// Keyboard and touch capture for the canvas area. Pointer streams are
// throttled so a continuous drag does not flood the service.

import { canvasToImage, Letterbox } from "./coords";
import type { Request } from "./protocol";

export const POINTER_INTERVAL_MS = 1000 / 30;

const ARROWS = new Set(["ArrowLeft", "ArrowRight", "ArrowUp", "ArrowDown"]);

export interface InputOptions {
  imageWidth: number;
  imageHeight: number;
  box: Letterbox;
  send: (request: Request) => void;
  toggleMode: () => void;
  now?: () => number;
}

export class CanvasInput {
  private lastPointerAt = -Infinity;
  private now: () => number;

  constructor(private options: InputOptions) {
    this.now = options.now ?? (() => performance.now());
  }

  handleKey(event: Pick<KeyboardEvent, "key" | "preventDefault">): boolean {
    if (ARROWS.has(event.key)) {
      event.preventDefault();
      this.options.send({ kind: "key", key: event.key });
      return true;
    }
    if (event.key === "m" || event.key === "M") {
      event.preventDefault();
      this.options.toggleMode();
      return true;
    }
    return false;
  }

  /**
   * One or two active touch points in canvas coordinates. Emits a pointer
   * request when inside the image and the throttle window has elapsed.
   */
  handlePointer(points: [number, number][]): boolean {
    if (points.length < 1 || points.length > 2) {
      return false;
    }
    const timestamp = this.now();
    if (timestamp - this.lastPointerAt < POINTER_INTERVAL_MS) {
      return false;
    }
    const mapped: [number, number][] = [];
    for (const [x, y] of points) {
      const pixel = canvasToImage(
        x, y, this.options.box, this.options.imageWidth, this.options.imageHeight,
      );
      if (pixel === null) {
        return false;
      }
      mapped.push(pixel);
    }
    if (mapped.length === 2 && mapped[0][0] === mapped[1][0] && mapped[0][1] === mapped[1][1]) {
      return false;
    }
    this.lastPointerAt = timestamp;
    this.options.send({ kind: "pointer", points: mapped });
    return true;
  }
}
