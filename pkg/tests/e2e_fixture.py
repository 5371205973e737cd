"""Shared two-speaker synthetic fixture for end-to-end pipeline tests.

Ten seconds of audio: speaker A (low tone) talks twice, speaker B (high
tone) once in between. The mock ASR table is keyed on the fingerprints the
deterministic pipeline will produce, so a job's texts must come out equal
to the table values.
"""

from __future__ import annotations

import numpy as np

from longscribe import diarise
from longscribe.asr_engine import MockAsrEngine, segment_fingerprint
from longscribe.media import CANONICAL_RATE, AudioBuffer, decode_wav, encode_wav, resample
from longscribe.vad import VadConfig, detect_speech

FIXTURE_RATE = CANONICAL_RATE
SPEAKER_A_HZ = 320.0
SPEAKER_B_HZ = 2600.0
TURNS = [
    (0.5, 2.5, SPEAKER_A_HZ, 3.0),
    (3.5, 5.5, SPEAKER_B_HZ, 3.5),
    (6.5, 8.5, SPEAKER_A_HZ, 4.2),
]
TOTAL_S = 10.0
TEXTS = ["dia duit a chairde", "go raibh maith agat", "slán agus beannacht"]


def build_wav() -> bytes:
    samples = np.zeros(int(TOTAL_S * FIXTURE_RATE))
    for start, end, freq, mod_hz in TURNS:
        n = int((end - start) * FIXTURE_RATE)
        t = np.arange(n) / FIXTURE_RATE
        # Distinct light modulation per turn keeps the three bursts from
        # sharing PCM bytes while leaving same-speaker embeddings close.
        burst = 0.45 * np.sin(2 * np.pi * freq * t) * (0.8 + 0.2 * np.sin(2 * np.pi * mod_hz * t))
        i = int(start * FIXTURE_RATE)
        samples[i : i + n] = burst
    return encode_wav(AudioBuffer(samples, FIXTURE_RATE))


def pipeline_turns(wav: bytes, vad_cfg: VadConfig = VadConfig()):
    """Replicate the service's deterministic segmentation for fingerprinting."""
    buf = resample(decode_wav(wav), CANONICAL_RATE)
    speech = detect_speech(buf, vad_cfg)
    embeddings = [diarise.embed_segment(buf, seg) for seg in speech]
    labels = diarise.cluster(embeddings)
    turns = [diarise.DiarisedSegment(seg, label) for seg, label in zip(speech, labels)]
    return buf, diarise.merge_adjacent(turns)


def build_mock_engine(wav: bytes) -> tuple[MockAsrEngine, list[str]]:
    buf, turns = pipeline_turns(wav)
    if len(turns) != len(TEXTS):
        raise AssertionError(f"fixture produced {len(turns)} turns, expected {len(TEXTS)}")
    table = {
        segment_fingerprint(buf, turn.segment): text for turn, text in zip(turns, TEXTS)
    }
    return MockAsrEngine(table), TEXTS
