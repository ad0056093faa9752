// PCM handling: the service ships clips as base64 16-bit little-endian
// interleaved stereo. Decoding happens here; no synthesis on the client.

import type { AudioResponse } from "./protocol";

export interface DecodedClip {
  sampleRate: number;
  left: Float32Array<ArrayBuffer>;
  right: Float32Array<ArrayBuffer>;
}

export function decodeBase64(data: string): Uint8Array {
  const binary = atob(data);
  const bytes = new Uint8Array(binary.length);
  for (let i = 0; i < binary.length; i++) {
    bytes[i] = binary.charCodeAt(i);
  }
  return bytes;
}

export function decodeClip(response: AudioResponse): DecodedClip {
  if (response.encoding !== "pcm16le-base64") {
    throw new Error(`unsupported audio encoding ${response.encoding}`);
  }
  const bytes = decodeBase64(response.data);
  const view = new DataView(bytes.buffer, bytes.byteOffset, bytes.byteLength);
  const frames = Math.floor(bytes.byteLength / 4); // 2 channels x 2 bytes
  const left = new Float32Array(frames);
  const right = new Float32Array(frames);
  for (let i = 0; i < frames; i++) {
    left[i] = view.getInt16(i * 4, true) / 32767;
    right[i] = view.getInt16(i * 4 + 2, true) / 32767;
  }
  return { sampleRate: response.sample_rate, left, right };
}

// Minimal surface of AudioContext we rely on, so tests can inject a fake.
export interface AudioContextLike {
  createBuffer(channels: number, frames: number, sampleRate: number): AudioBuffer;
  createBufferSource(): AudioBufferSourceNode;
  destination: AudioDestinationNode;
}

/**
 * Plays clips strictly one after another. Server order is play order; a clip
 * never starts before the previous one ended.
 */
export class AudioQueue {
  private queue: DecodedClip[] = [];
  private playing = false;

  constructor(private context: AudioContextLike) {}

  get pending(): number {
    return this.queue.length + (this.playing ? 1 : 0);
  }

  enqueue(response: AudioResponse): void {
    this.queue.push(decodeClip(response));
    if (!this.playing) {
      this.playNext();
    }
  }

  private playNext(): void {
    const clip = this.queue.shift();
    if (!clip) {
      this.playing = false;
      return;
    }
    this.playing = true;
    const buffer = this.context.createBuffer(2, clip.left.length, clip.sampleRate);
    buffer.copyToChannel(clip.left, 0);
    buffer.copyToChannel(clip.right, 1);
    const source = this.context.createBufferSource();
    source.buffer = buffer;
    source.connect(this.context.destination);
    source.onended = () => this.playNext();
    source.start();
  }
}
