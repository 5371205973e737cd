"""Voice activity detection.

The built-in detector thresholds frame RMS energy against an adaptive
percentile of the frame-energy distribution, so detection is invariant to
recording gain. An external detector can be swapped in over a one-shot
subprocess protocol: PCM16 on stdin, one JSON object per segment on stdout.
"""

from __future__ import annotations

import json
import math
import subprocess
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EngineUnavailable, ProtocolViolation
from .media import AudioBuffer

THRESHOLD_SCALE = 1.5


class EmptyAudio(ValueError):
    """The buffer holds no samples."""


@dataclass(frozen=True)
class SpeechSegment:
    """A half-open time interval [start_s, end_s) believed to contain speech."""

    start_s: float
    end_s: float

    def __post_init__(self):
        if not (math.isfinite(self.start_s) and math.isfinite(self.end_s)):
            raise ValueError("segment bounds must be finite")
        if self.start_s < 0:
            raise ValueError(f"segment start {self.start_s} is negative")
        if self.end_s <= self.start_s:
            raise ValueError(f"segment end {self.end_s} not after start {self.start_s}")

    @property
    def length_s(self) -> float:
        return self.end_s - self.start_s


def validate_segment_list(segments: Sequence[SpeechSegment], duration_s: float | None = None) -> None:
    """Check the list invariants: sorted by start, non-overlapping, in bounds."""
    prev_end = 0.0
    for seg in segments:
        if seg.start_s < prev_end:
            raise ValueError(f"segment starting at {seg.start_s} overlaps or is out of order")
        if duration_s is not None and seg.end_s > duration_s + 1e-9:
            raise ValueError(f"segment ending at {seg.end_s} exceeds duration {duration_s}")
        prev_end = seg.end_s


@dataclass(frozen=True)
class VadConfig:
    frame_ms: int = 30
    energy_percentile: float = 0.3
    min_speech_ms: int = 250
    min_silence_ms: int = 300
    pad_ms: int = 100

    def __post_init__(self):
        if min(self.frame_ms, self.min_speech_ms, self.min_silence_ms) <= 0:
            raise ValueError("durations must be positive")
        if self.pad_ms < 0:
            raise ValueError("pad_ms must be non-negative")
        if not 0 < self.energy_percentile < 1:
            raise ValueError("energy_percentile must lie strictly between 0 and 1")


def _frame_rms(samples: np.ndarray, frame_len: int) -> np.ndarray:
    n_full = samples.size // frame_len
    rms = []
    if n_full:
        framed = samples[: n_full * frame_len].reshape(n_full, frame_len)
        rms.extend(np.sqrt(np.mean(framed * framed, axis=1)))
    tail = samples[n_full * frame_len :]
    if tail.size:
        rms.append(math.sqrt(float(np.mean(tail * tail))))
    return np.asarray(rms, dtype=np.float64)


def detect_speech(buf: AudioBuffer, cfg: VadConfig = VadConfig()) -> list[SpeechSegment]:
    """Find speech intervals using the adaptive energy detector.

    Frames whose RMS exceeds THRESHOLD_SCALE times the energy at
    cfg.energy_percentile of the sorted frame-RMS distribution count as
    speech. Silence gaps shorter than min_silence_ms are bridged, speech
    runs shorter than min_speech_ms dropped, and each surviving segment is
    padded by pad_ms then clipped to the audio bounds.
    """
    if buf.samples.size == 0:
        raise EmptyAudio("cannot detect speech in an empty buffer")

    frame_len = max(1, buf.sample_rate * cfg.frame_ms // 1000)
    rms = _frame_rms(buf.samples, frame_len)
    n_frames = rms.size

    ordered = np.sort(rms)
    idx = int(round(cfg.energy_percentile * (n_frames - 1)))
    threshold = THRESHOLD_SCALE * float(ordered[idx])
    speech = rms > threshold

    # Bridge interior silences shorter than min_silence_ms.
    runs = _runs(speech)
    for value, start, end in runs:
        if value or start == 0 or end == n_frames:
            continue
        if (end - start) * cfg.frame_ms < cfg.min_silence_ms:
            speech[start:end] = True

    segments: list[SpeechSegment] = []
    duration = buf.duration_s
    pad = cfg.pad_ms / 1000.0
    for value, start, end in _runs(speech):
        if not value:
            continue
        if (end - start) * cfg.frame_ms < cfg.min_speech_ms:
            continue
        start_s = max(0.0, start * frame_len / buf.sample_rate - pad)
        end_s = min(duration, min(end * frame_len, buf.samples.size) / buf.sample_rate + pad)
        if segments and start_s <= segments[-1].end_s:
            last = segments.pop()
            segments.append(SpeechSegment(last.start_s, max(last.end_s, end_s)))
        else:
            segments.append(SpeechSegment(start_s, end_s))
    return segments


def _runs(mask: np.ndarray) -> list[tuple[bool, int, int]]:
    """Maximal constant runs of a boolean array as (value, start, end)."""
    runs = []
    start = 0
    for i in range(1, mask.size + 1):
        if i == mask.size or mask[i] != mask[start]:
            runs.append((bool(mask[start]), start, i))
            start = i
    return runs


@dataclass(frozen=True)
class DetectorHandle:
    """Launch spec for an external detector subprocess."""

    command: tuple[str, ...]
    timeout_s: float = 60.0


def detect_speech_external(buf: AudioBuffer, engine: DetectorHandle) -> list[SpeechSegment]:
    """Run an external detector over the buffer and validate its output.

    The engine receives the full buffer as 16-bit PCM on stdin and must
    write one JSON object per detected segment, {"start": s, "end": s},
    then exit 0. Output that breaks the segment-list invariants is
    rejected with ProtocolViolation.
    """
    try:
        proc = subprocess.run(
            list(engine.command),
            input=buf.pcm16_bytes(),
            capture_output=True,
            timeout=engine.timeout_s,
        )
    except (OSError, subprocess.TimeoutExpired) as exc:
        raise EngineUnavailable(f"detector failed to run: {exc}") from exc
    if proc.returncode != 0:
        raise EngineUnavailable(f"detector exited with status {proc.returncode}")

    segments: list[SpeechSegment] = []
    for line in proc.stdout.decode("utf-8", "replace").splitlines():
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            seg = SpeechSegment(float(obj["start"]), float(obj["end"]))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ProtocolViolation(f"bad detector output line {line!r}: {exc}") from exc
        segments.append(seg)

    try:
        validate_segment_list(segments, buf.duration_s)
    except ValueError as exc:
        raise ProtocolViolation(str(exc)) from exc
    return segments
