// Rendering of protocol responses into the page: the output log is a live
// region read by screen readers, links become real buttons.

import type { Span, TextBlockResponse } from "./protocol";

export function createOutputLog(): HTMLElement {
  const log = document.createElement("div");
  log.id = "output-log";
  log.setAttribute("role", "log");
  log.setAttribute("aria-live", "polite");
  log.setAttribute("aria-label", "Browser output");
  return log;
}

export function renderBlock(
  block: TextBlockResponse,
  log: HTMLElement,
  onActivate: (linkId: number) => void,
): HTMLElement {
  const entry = document.createElement("div");
  entry.className = "output-block";
  for (const span of block.spans) {
    entry.appendChild(renderSpan(span, onActivate));
  }
  log.appendChild(entry);
  return entry;
}

function renderSpan(span: Span, onActivate: (linkId: number) => void): Node {
  if (span.kind === "text") {
    return document.createTextNode(span.text);
  }
  const button = document.createElement("button");
  button.type = "button";
  button.className = "output-link";
  button.textContent = span.label;
  button.dataset.link = String(span.link);
  button.dataset.command = span.command;
  button.addEventListener("click", () => onActivate(span.link));
  return button;
}

export function createStatusBar(): HTMLElement {
  const bar = document.createElement("div");
  bar.id = "status-bar";
  bar.setAttribute("role", "status");
  bar.setAttribute("aria-live", "polite");
  return bar;
}

export function showStatus(bar: HTMLElement, text: string): void {
  bar.textContent = text;
}
