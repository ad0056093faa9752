// Message types spoken with the session service. One JSON object per
// WebSocket message, mirroring the stdio protocol exactly.

export type Request =
  | { kind: "command"; text: string }
  | { kind: "key"; key: string }
  | { kind: "pointer"; points: [number, number][] }
  | { kind: "mode"; mode: "text" | "graphical" }
  | { kind: "activate-link"; link: number };

export interface TextSpan {
  kind: "text";
  text: string;
}

export interface LinkSpan {
  kind: "link";
  label: string;
  command: string;
  link: number;
}

export type Span = TextSpan | LinkSpan;

export interface TextBlockResponse {
  kind: "text-block";
  spans: Span[];
}

export interface StatusResponse {
  kind: "status";
  text: string;
}

export interface AudioResponse {
  kind: "audio";
  sample_rate: number;
  channels: number;
  encoding: string;
  duration: number;
  data: string;
}

export interface FocusChangedResponse {
  kind: "focus-changed";
  element: number;
  bbox: [number, number, number, number];
}

export type Response =
  | TextBlockResponse
  | StatusResponse
  | AudioResponse
  | FocusChangedResponse;

export function parseResponse(raw: string): Response {
  const obj = JSON.parse(raw);
  if (!obj || typeof obj !== "object" || typeof obj.kind !== "string") {
    throw new Error("response must be an object with a kind");
  }
  switch (obj.kind) {
    case "text-block":
      if (!Array.isArray(obj.spans)) throw new Error("text-block needs spans");
      return obj as TextBlockResponse;
    case "status":
      if (typeof obj.text !== "string") throw new Error("status needs text");
      return obj as StatusResponse;
    case "audio":
      if (typeof obj.data !== "string" || typeof obj.sample_rate !== "number") {
        throw new Error("audio needs data and sample_rate");
      }
      return obj as AudioResponse;
    case "focus-changed":
      if (!Array.isArray(obj.bbox) || obj.bbox.length !== 4) {
        throw new Error("focus-changed needs a 4-element bbox");
      }
      return obj as FocusChangedResponse;
    default:
      throw new Error(`unknown response kind ${obj.kind}`);
  }
}

export function encodeRequest(request: Request): string {
  return JSON.stringify(request);
}
