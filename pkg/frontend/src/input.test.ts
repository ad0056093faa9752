import { describe, expect, it } from "vitest";

import { letterbox } from "./coords";
import { CanvasInput, POINTER_INTERVAL_MS } from "./input";
import type { Request } from "./protocol";

function makeInput(now: () => number) {
  const sent: Request[] = [];
  let toggles = 0;
  const input = new CanvasInput({
    imageWidth: 300,
    imageHeight: 150,
    box: letterbox(600, 300, 300, 150),
    send: (request) => sent.push(request),
    toggleMode: () => toggles++,
    now,
  });
  return { input, sent, toggles: () => toggles };
}

describe("keyboard capture", () => {
  it("forwards arrow keys as key requests", () => {
    const { input, sent } = makeInput(() => 0);
    let prevented = false;
    input.handleKey({ key: "ArrowRight", preventDefault: () => (prevented = true) });
    expect(sent).toEqual([{ kind: "key", key: "ArrowRight" }]);
    expect(prevented).toBe(true);
  });

  it("m toggles the mode", () => {
    const { input, sent, toggles } = makeInput(() => 0);
    input.handleKey({ key: "m", preventDefault: () => {} });
    expect(toggles()).toBe(1);
    expect(sent).toEqual([]);
  });

  it("ignores other keys", () => {
    const { input, sent } = makeInput(() => 0);
    expect(input.handleKey({ key: "q", preventDefault: () => {} })).toBe(false);
    expect(sent).toEqual([]);
  });
});

describe("pointer capture", () => {
  it("maps single touches to image pixels", () => {
    const { input, sent } = makeInput(() => 1000);
    expect(input.handlePointer([[301, 151]])).toBe(true);
    expect(sent).toEqual([{ kind: "pointer", points: [[150, 75]] }]);
  });

  it("maps two-finger gestures to two points", () => {
    const { input, sent } = makeInput(() => 1000);
    input.handlePointer([[0, 0], [599, 299]]);
    expect(sent[0]).toEqual({ kind: "pointer", points: [[0, 0], [299, 149]] });
  });

  it("throttles a drag to the configured rate", () => {
    let clock = 0;
    const { input, sent } = makeInput(() => clock);
    for (let i = 0; i < 100; i++) {
      clock = i * 10; // 100 Hz drag
      input.handlePointer([[10 + i, 10]]);
    }
    const expected = Math.ceil((99 * 10) / POINTER_INTERVAL_MS) + 1;
    expect(sent.length).toBeLessThanOrEqual(expected);
    expect(sent.length).toBeGreaterThan(10);
    expect(sent.length).toBeLessThan(40);
  });

  it("drops points outside the image", () => {
    const { input, sent } = makeInput(() => 0);
    expect(input.handlePointer([[-5, 10]])).toBe(false);
    expect(sent).toEqual([]);
  });

  it("drops degenerate two-point gestures", () => {
    const { input, sent } = makeInput(() => 0);
    expect(input.handlePointer([[10, 10], [10, 10]])).toBe(false);
    expect(sent).toEqual([]);
  });
});
