"""Speaker diarisation: spectral embeddings, clustering, segment joining.

The embedder is a deterministic stand-in for a neural speaker encoder: for
each segment it takes per-band log-energy means and standard deviations over
a mel filterbank, centres the means, and L2-normalises the result. Segments
are grouped by average-linkage agglomerative clustering under cosine
distance, and consecutive same-speaker segments are joined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .media import AudioBuffer
from .vad import SpeechSegment

N_MEL_BANDS = 26
EMBEDDING_DIM = 2 * N_MEL_BANDS
_FRAME_S = 0.025
_HOP_S = 0.010
_LOG_FLOOR = 1e-10


class SegmentOutOfBounds(ValueError):
    """The segment lies outside the audio or is too short to analyse."""


class DimensionMismatch(ValueError):
    """Embeddings in one batch must share a dimension."""


class UnsortedInput(ValueError):
    """Segment lists must be sorted by start time and disjoint."""


@dataclass(frozen=True)
class SpeakerEmbedding:
    """Unit-norm vector summarising the spectral shape of one segment."""

    vector: np.ndarray

    def __post_init__(self):
        vec = np.asarray(self.vector, dtype=np.float64)
        object.__setattr__(self, "vector", vec)
        if vec.ndim != 1:
            raise ValueError("embedding must be a 1-D vector")
        if not np.all(np.isfinite(vec)):
            raise ValueError("embedding must be finite")
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > 1e-6:
            raise ValueError(f"embedding norm {norm:.8f} is not 1")


@dataclass(frozen=True)
class DiarisedSegment:
    segment: SpeechSegment
    speaker_id: int

    def __post_init__(self):
        if self.speaker_id < 0:
            raise ValueError("speaker_id must be non-negative")


def _hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f) / 700.0)


def _mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m) / 2595.0) - 1.0)


def _mel_filterbank(n_bands: int, n_bins: int, sample_rate: int) -> np.ndarray:
    nyquist = sample_rate / 2.0
    mel_points = np.linspace(0.0, float(_hz_to_mel(nyquist)), n_bands + 2)
    hz_points = _mel_to_hz(mel_points)
    bin_freqs = np.linspace(0.0, nyquist, n_bins)
    bank = np.zeros((n_bands, n_bins))
    for b in range(n_bands):
        lo, mid, hi = hz_points[b], hz_points[b + 1], hz_points[b + 2]
        up = (bin_freqs - lo) / max(mid - lo, 1e-12)
        down = (hi - bin_freqs) / max(hi - mid, 1e-12)
        bank[b] = np.clip(np.minimum(up, down), 0.0, None)
    return bank


def embed_segment(buf: AudioBuffer, seg: SpeechSegment) -> SpeakerEmbedding:
    """Deterministic unit-norm embedding of one speech segment."""
    if seg.start_s < 0 or seg.end_s > buf.duration_s + 1e-9:
        raise SegmentOutOfBounds(f"segment [{seg.start_s}, {seg.end_s}] outside audio")
    samples = buf.slice_seconds(seg.start_s, seg.end_s)
    frame_len = max(2, int(round(_FRAME_S * buf.sample_rate)))
    hop = max(1, int(round(_HOP_S * buf.sample_rate)))
    if samples.size < frame_len:
        raise SegmentOutOfBounds("segment shorter than one analysis frame")

    n_frames = 1 + (samples.size - frame_len) // hop
    window = np.hanning(frame_len)
    frames = np.stack([samples[i * hop : i * hop + frame_len] * window for i in range(n_frames)])
    power = np.abs(np.fft.rfft(frames, axis=1)) ** 2
    bank = _mel_filterbank(N_MEL_BANDS, power.shape[1], buf.sample_rate)
    log_energy = np.log(power @ bank.T + _LOG_FLOOR)

    means = log_energy.mean(axis=0)
    stds = log_energy.std(axis=0)
    vec = np.concatenate([means - means.mean(), stds])
    norm = float(np.linalg.norm(vec))
    if norm < 1e-12:
        # Perfectly flat spectrum statistics (e.g. digital silence).
        vec = np.full(EMBEDDING_DIM, 1.0 / math.sqrt(EMBEDDING_DIM))
    else:
        vec = vec / norm
    return SpeakerEmbedding(vec)


@dataclass(frozen=True)
class ClusterConfig:
    distance_threshold: float = 0.4
    max_speakers: int = 10

    def __post_init__(self):
        if self.max_speakers < 1:
            raise ValueError("max_speakers must be >= 1")
        if self.distance_threshold < 0:
            raise ValueError("distance_threshold must be non-negative")


def cluster(embeddings: Sequence[SpeakerEmbedding], cfg: ClusterConfig = ClusterConfig()) -> list[int]:
    """Average-linkage agglomerative clustering under cosine distance.

    Pairs keep merging while the minimum inter-cluster distance stays at or
    below cfg.distance_threshold; merging continues past the threshold only
    while more than cfg.max_speakers clusters remain. Labels are 0-based in
    order of first occurrence in the input.
    """
    if not embeddings:
        raise ValueError("need at least one embedding")
    dim = embeddings[0].vector.size
    for emb in embeddings:
        if emb.vector.size != dim:
            raise DimensionMismatch(f"embedding dims differ: {emb.vector.size} vs {dim}")

    n = len(embeddings)
    vectors = np.stack([e.vector for e in embeddings])
    base = 1.0 - vectors @ vectors.T  # cosine distance of unit vectors

    active: dict[int, list[int]] = {i: [i] for i in range(n)}
    dist: dict[tuple[int, int], float] = {
        (i, j): float(base[i, j]) for i in range(n) for j in range(i + 1, n)
    }
    next_id = n

    while len(active) > 1:
        pair = min(dist, key=lambda p: (dist[p], p))
        if dist[pair] > cfg.distance_threshold and len(active) <= cfg.max_speakers:
            break
        i, j = pair
        size_i, size_j = len(active[i]), len(active[j])
        merged_id = next_id
        next_id += 1
        # Lance-Williams update keeps average linkage exact under merging.
        for k in active:
            if k in (i, j):
                continue
            d_ik = dist[(min(i, k), max(i, k))]
            d_jk = dist[(min(j, k), max(j, k))]
            dist[(k, merged_id)] = (size_i * d_ik + size_j * d_jk) / (size_i + size_j)
        active[merged_id] = active.pop(i) + active.pop(j)
        dist = {p: d for p, d in dist.items() if i not in p and j not in p}

    label_of_index: dict[int, int] = {}
    for cluster_id, cluster_members in active.items():
        for idx in cluster_members:
            label_of_index[idx] = cluster_id
    remap: dict[int, int] = {}
    labels = []
    for idx in range(n):
        cid = label_of_index[idx]
        if cid not in remap:
            remap[cid] = len(remap)
        labels.append(remap[cid])
    return labels


def merge_adjacent(
    segments: Sequence[DiarisedSegment], max_gap_s: float = 1.0, max_len_s: float = 30.0
) -> list[DiarisedSegment]:
    """Join consecutive same-speaker segments separated by at most max_gap_s.

    A join is skipped when the merged span would exceed max_len_s. The
    result is sorted and disjoint; applying the operation twice gives the
    same output as applying it once.
    """
    prev_end = -math.inf
    for d in segments:
        if d.segment.start_s < prev_end:
            raise UnsortedInput("segments must be sorted by start and disjoint")
        prev_end = d.segment.end_s

    merged: list[DiarisedSegment] = []
    for d in segments:
        if merged:
            last = merged[-1]
            gap = d.segment.start_s - last.segment.end_s
            span = d.segment.end_s - last.segment.start_s
            if last.speaker_id == d.speaker_id and gap <= max_gap_s and span <= max_len_s:
                merged[-1] = DiarisedSegment(
                    SpeechSegment(last.segment.start_s, d.segment.end_s), d.speaker_id
                )
                continue
        merged.append(d)
    return merged
