"""Image-to-sound rendering of ink regions, columns and segments.

A region is scanned left to right; every ink pixel in a column contributes a
sinusoid whose pitch follows its height (log-spaced, top = high) and the
whole chord is panned across the stereo field by column position.  Chords are
normalized by the square root of their voice count so loudness tracks shape,
not density, and each column gets short raised-cosine ramps against clicks.
"""

from __future__ import annotations

import base64
import math
import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bundle import INK_THRESHOLD, EquationBundle
from .regions import InkRegion

RAMP_SECONDS = 0.005

# Base chord level; leaves headroom so emphasized pixels stay below full
# scale instead of being flattened by the clip guard.
MASTER_GAIN = 0.25


@dataclass(frozen=True)
class SonifyParams:
    sample_rate: int = 44100
    f_min: float = 200.0
    f_max: float = 4000.0
    column_dwell_ms: float = 8.0
    min_clip_ms: float = 300.0
    max_clip_ms: float = 2000.0
    emphasis_gain: float = 3.0
    emphasis_radius: int = 8

    def __post_init__(self) -> None:
        if not (0 < self.f_min < self.f_max < self.sample_rate / 2):
            raise ValueError("need 0 < f_min < f_max < Nyquist")
        if self.column_dwell_ms <= 0:
            raise ValueError("column dwell must be positive")
        if self.min_clip_ms > self.max_clip_ms:
            raise ValueError("min clip duration exceeds max")


class AudioClip:
    """Stereo sample buffer in [-1, 1], frames stored as an (n, 2) array."""

    def __init__(self, sample_rate: int, frames: np.ndarray):
        frames = np.asarray(frames, dtype=np.float64)
        if frames.ndim != 2 or frames.shape[1] != 2:
            raise ValueError(f"frames must be (n, 2), got {frames.shape}")
        peak = float(np.max(np.abs(frames))) if frames.size else 0.0
        if peak > 1.0:
            frames = frames / peak
        frames.flags.writeable = False
        self.sample_rate = sample_rate
        self.frames = frames

    @property
    def duration(self) -> float:
        return self.frames.shape[0] / self.sample_rate

    @property
    def samples(self) -> np.ndarray:
        """Interleaved stereo view of the frame buffer."""
        return self.frames.reshape(-1)

    def to_pcm16(self) -> bytes:
        scaled = np.clip(np.round(self.samples * 32767.0), -32768, 32767)
        return scaled.astype("<i2").tobytes()

    def to_pcm16_base64(self) -> str:
        return base64.b64encode(self.to_pcm16()).decode("ascii")

    def write_wav(self, path: str | Path) -> None:
        with wave.open(str(path), "wb") as out:
            out.setnchannels(2)
            out.setsampwidth(2)
            out.setframerate(self.sample_rate)
            out.writeframes(self.to_pcm16())


def read_wav(path: str | Path) -> AudioClip:
    with wave.open(str(path), "rb") as src:
        if src.getnchannels() != 2 or src.getsampwidth() != 2:
            raise ValueError("expected 16-bit stereo WAV")
        rate = src.getframerate()
        raw = src.readframes(src.getnframes())
    flat = np.frombuffer(raw, dtype="<i2").astype(np.float64) / 32767.0
    return AudioClip(rate, flat.reshape(-1, 2))


def pitch_of_row(row: int, region_height: int, params: SonifyParams) -> float:
    """Log-spaced pitch for a raster row: top row plays f_max, bottom f_min."""
    if not 0 <= row < region_height:
        raise ValueError(f"row {row} outside region of height {region_height}")
    if region_height == 1:
        return math.sqrt(params.f_min * params.f_max)
    exponent = 1.0 - row / (region_height - 1)
    return params.f_min * (params.f_max / params.f_min) ** exponent


def _pan_gains(position: float) -> tuple[float, float]:
    """Constant-power gains; 0 is hard left, 1 is hard right."""
    angle = math.pi * position / 2.0
    return math.cos(angle), math.sin(angle)


def _ramp_envelope(n: int, ramp_len: int) -> np.ndarray:
    env = np.ones(n)
    ramp_len = min(ramp_len, n // 2)
    if ramp_len > 0:
        fade = 0.5 - 0.5 * np.cos(np.pi * np.arange(ramp_len) / ramp_len)
        env[:ramp_len] = fade
        env[n - ramp_len:] = fade[::-1]
    return env


def _chord(
    freqs: np.ndarray, amps: np.ndarray, t: np.ndarray, ramp_len: int
) -> np.ndarray:
    """Sum of sinusoids over a time vector with raised-cosine fades.

    Phase follows the clip-global time vector, so a pixel row sustained
    across columns stays one continuous tone and the clip spectrum peaks at
    its true pitch instead of a multiple of the column rate.
    """
    n = len(t)
    if len(freqs) == 0 or n == 0:
        return np.zeros(n)
    wave_sum = (amps[:, None] * np.sin(2 * np.pi * freqs[:, None] * t[None, :])).sum(axis=0)
    wave_sum *= MASTER_GAIN / math.sqrt(max(1, len(freqs)))
    return wave_sum * _ramp_envelope(n, ramp_len)


def sonify_region(
    bundle: EquationBundle, region: InkRegion, params: SonifyParams | None = None
) -> AudioClip:
    """Scan a region column by column into a stereo clip."""
    params = params or SonifyParams()
    b = region.bbox
    if b.width <= 0 or b.height <= 0:
        raise ValueError("cannot sonify an empty region")
    pixels = bundle.image.pixels[b.top:b.bottom, b.left:b.right]
    duration_ms = min(max(b.width * params.column_dwell_ms, params.min_clip_ms),
                      params.max_clip_ms)
    total = int(round(duration_ms / 1000.0 * params.sample_rate))
    frames = np.zeros((total, 2))
    pitches = np.array([pitch_of_row(r, b.height, params) for r in range(b.height)])
    ramp_len = int(RAMP_SECONDS * params.sample_rate)
    for c in range(b.width):
        start = c * total // b.width
        end = (c + 1) * total // b.width
        column = pixels[:, c]
        rows = np.nonzero(column <= INK_THRESHOLD)[0]
        if len(rows) == 0:
            continue
        amps = (255.0 - column[rows]) / 255.0
        t = np.arange(start, end) / params.sample_rate
        mono = _chord(pitches[rows], amps, t, ramp_len)
        left, right = _pan_gains((c + 0.5) / b.width)
        frames[start:end, 0] = left * mono
        frames[start:end, 1] = right * mono
    return AudioClip(params.sample_rate, frames)


def sonify_column(
    bundle: EquationBundle,
    x: int,
    emphasis_center: int | None = None,
    params: SonifyParams | None = None,
) -> AudioClip:
    """Render one full-height image column as a single chord."""
    params = params or SonifyParams()
    if not 0 <= x < bundle.image.width:
        raise ValueError(f"column {x} outside image of width {bundle.image.width}")
    height = bundle.image.height
    column = bundle.image.pixels[:, x]
    rows = np.nonzero(column <= INK_THRESHOLD)[0]
    n = int(round(params.min_clip_ms / 1000.0 * params.sample_rate))
    frames = np.zeros((n, 2))
    if len(rows):
        amps = (255.0 - column[rows]) / 255.0
        if emphasis_center is not None:
            emphasized = np.abs(rows - emphasis_center) <= params.emphasis_radius
            amps = np.where(emphasized, amps * params.emphasis_gain, amps)
        pitches = np.array([pitch_of_row(int(r), height, params) for r in rows])
        mono = _chord(pitches, amps, np.arange(n) / params.sample_rate,
                      int(RAMP_SECONDS * params.sample_rate))
        left, right = _pan_gains((x + 0.5) / bundle.image.width)
        frames[:, 0] = left * mono
        frames[:, 1] = right * mono
    return AudioClip(params.sample_rate, frames)


def sonify_segment(
    bundle: EquationBundle,
    p1: tuple[int, int],
    p2: tuple[int, int],
    params: SonifyParams | None = None,
) -> AudioClip:
    """Render the pixels under a line segment as a single chord.

    Pitch follows the position along the segment from p1 (high) to p2 (low),
    so the pair of touch points acts as a freely rotatable scanner.
    """
    params = params or SonifyParams()
    if p1 == p2:
        raise ValueError("segment endpoints must differ")
    for px, py in (p1, p2):
        if not (0 <= px < bundle.image.width and 0 <= py < bundle.image.height):
            raise ValueError(f"point ({px}, {py}) outside the image")
    length = math.hypot(p2[0] - p1[0], p2[1] - p1[1])
    count = max(2, int(math.ceil(length)))
    freqs = []
    amps = []
    for i in range(count):
        t = i / (count - 1)
        x = int(round(p1[0] + (p2[0] - p1[0]) * t))
        y = int(round(p1[1] + (p2[1] - p1[1]) * t))
        value = bundle.image.pixels[y, x]
        if value <= INK_THRESHOLD:
            freqs.append(params.f_min * (params.f_max / params.f_min) ** (1.0 - t))
            amps.append((255.0 - value) / 255.0)
    n = int(round(params.min_clip_ms / 1000.0 * params.sample_rate))
    frames = np.zeros((n, 2))
    if freqs:
        mono = _chord(np.array(freqs), np.array(amps), np.arange(n) / params.sample_rate,
                      int(RAMP_SECONDS * params.sample_rate))
        mid_x = (p1[0] + p2[0]) / 2.0
        left, right = _pan_gains((mid_x + 0.5) / bundle.image.width)
        frames[:, 0] = left * mono
        frames[:, 1] = right * mono
    return AudioClip(params.sample_rate, frames)
