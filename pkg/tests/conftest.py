from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from longscribe.media import AudioBuffer


def tone(freq_hz: float, duration_s: float, rate: int = 16_000, amplitude: float = 0.5) -> np.ndarray:
    t = np.arange(int(round(duration_s * rate))) / rate
    return amplitude * np.sin(2 * np.pi * freq_hz * t)


def tone_in_silence(
    freq_hz: float,
    tone_start_s: float,
    tone_end_s: float,
    total_s: float,
    rate: int = 16_000,
    amplitude: float = 0.5,
) -> AudioBuffer:
    samples = np.zeros(int(round(total_s * rate)))
    burst = tone(freq_hz, tone_end_s - tone_start_s, rate, amplitude)
    start = int(round(tone_start_s * rate))
    samples[start : start + burst.size] = burst
    return AudioBuffer(samples, rate)


@pytest.fixture
def rate() -> int:
    return 16_000
