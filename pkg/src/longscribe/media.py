"""Audio ingestion: RIFF/WAVE decoding, downmixing, resampling, PCM16 encoding.

Everything downstream of this module works on mono float buffers in [-1, 1].
PCM16 exists only at the container boundary. The resampler is plain linear
interpolation, which is adequate for 16 kHz speech and exact on constants.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

CANONICAL_RATE = 16_000

_PCM_FORMAT = 1
_FLOAT_FORMAT = 3


class MalformedHeader(ValueError):
    """The RIFF/WAVE container structure is invalid."""


class UnsupportedEncoding(ValueError):
    """The WAV payload uses a codec other than PCM16 or IEEE float."""


@dataclass(frozen=True)
class AudioBuffer:
    """Mono audio: float samples in [-1, 1] at a fixed sample rate."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1:
            raise ValueError("expected a mono (1-D) sample array")
        if int(self.sample_rate) <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        object.__setattr__(self, "sample_rate", int(self.sample_rate))
        if samples.size:
            if not np.all(np.isfinite(samples)):
                raise ValueError("samples must be finite")
            peak = float(np.max(np.abs(samples)))
            if peak > 1.0 + 1e-6:
                raise ValueError(f"sample amplitude {peak:.6f} out of [-1, 1]")

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate

    def slice_seconds(self, start_s: float, end_s: float) -> np.ndarray:
        """Samples covering [start_s, end_s), clipped to the buffer."""
        lo = max(0, int(round(start_s * self.sample_rate)))
        hi = min(self.samples.size, int(round(end_s * self.sample_rate)))
        return self.samples[lo:hi]

    def pcm16_bytes(self) -> bytes:
        return _quantise_pcm16(self.samples).tobytes()


def _quantise_pcm16(samples: np.ndarray) -> np.ndarray:
    # Scale by 32768 and clip the lone overflow at +1.0; keeps the
    # round-trip error within one quantisation step (1/32768).
    q = np.clip(np.rint(np.asarray(samples, dtype=np.float64) * 32768.0), -32768, 32767)
    return q.astype("<i2")


def decode_wav(data: bytes) -> AudioBuffer:
    """Parse a RIFF/WAVE byte string into a mono AudioBuffer.

    Multi-channel audio is downmixed by the per-frame arithmetic mean.
    The original sample rate is preserved; use resample() afterwards.

    Raises MalformedHeader for structural problems and UnsupportedEncoding
    for payloads that are neither PCM16 nor IEEE float.
    """
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise MalformedHeader("not a RIFF/WAVE container")

    fmt_body = None
    payload = None
    pos = 12
    while pos + 8 <= len(data):
        chunk_id = data[pos : pos + 4]
        (size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8 : pos + 8 + size]
        if len(body) < size:
            raise MalformedHeader(f"chunk {chunk_id!r} declares {size} bytes but is truncated")
        if chunk_id == b"fmt ":
            fmt_body = body
        elif chunk_id == b"data":
            payload = body
        pos += 8 + size + (size & 1)  # chunks are word-aligned

    if fmt_body is None:
        raise MalformedHeader("missing fmt chunk")
    if payload is None:
        raise MalformedHeader("missing data chunk")
    if len(fmt_body) < 16:
        raise MalformedHeader("fmt chunk too short")

    audio_format, channels, sample_rate, _byte_rate, block_align, bits = struct.unpack_from(
        "<HHIIHH", fmt_body, 0
    )
    if channels < 1:
        raise MalformedHeader("channel count must be >= 1")
    if sample_rate <= 0:
        raise MalformedHeader("sample rate must be positive")

    if audio_format == _PCM_FORMAT:
        if bits != 16:
            raise UnsupportedEncoding(f"PCM with {bits} bits per sample is not supported")
        sample_dtype = "<i2"
    elif audio_format == _FLOAT_FORMAT:
        if bits == 32:
            sample_dtype = "<f4"
        elif bits == 64:
            sample_dtype = "<f8"
        else:
            raise UnsupportedEncoding(f"IEEE float with {bits} bits per sample is not supported")
    else:
        raise UnsupportedEncoding(f"audio format tag {audio_format} is not PCM16 or IEEE float")

    bytes_per_sample = bits // 8
    frame_size = bytes_per_sample * channels
    if block_align not in (0, frame_size):
        raise MalformedHeader(f"block align {block_align} does not match frame size {frame_size}")
    if len(payload) % frame_size != 0:
        raise MalformedHeader("data chunk does not contain a whole number of frames")

    raw = np.frombuffer(payload, dtype=sample_dtype)
    frames = raw.reshape(-1, channels).astype(np.float64)
    mono = frames.mean(axis=1)
    if audio_format == _PCM_FORMAT:
        mono = mono / 32768.0
    else:
        mono = np.clip(mono, -1.0, 1.0)
    return AudioBuffer(mono, sample_rate)


def resample(buf: AudioBuffer, target_rate: int) -> AudioBuffer:
    """Linear-interpolation resampling; the identity when rates match."""
    if target_rate <= 0:
        raise ValueError(f"target_rate must be positive, got {target_rate}")
    if target_rate == buf.sample_rate:
        return buf
    n_in = buf.samples.size
    n_out = int(round(n_in * target_rate / buf.sample_rate))
    if n_in == 0 or n_out == 0:
        return AudioBuffer(np.zeros(0), target_rate)
    positions = np.arange(n_out) * (buf.sample_rate / target_rate)
    out = np.interp(positions, np.arange(n_in), buf.samples)
    return AudioBuffer(out, target_rate)


def encode_wav(buf: AudioBuffer) -> bytes:
    """Serialise a buffer as canonical 44-byte-header PCM16 RIFF/WAVE."""
    pcm = buf.pcm16_bytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(pcm),
        b"WAVE",
        b"fmt ",
        16,
        _PCM_FORMAT,
        1,
        buf.sample_rate,
        buf.sample_rate * 2,
        2,
        16,
        b"data",
        len(pcm),
    )
    return header + pcm
