"""ASR boundary: mock determinism, hypothesis invariants, subprocess protocol."""

from __future__ import annotations

import json
import sys

import numpy as np
import pytest

from longscribe.asr_engine import (
    AsrHypothesis,
    EmptySegment,
    EngineDescriptor,
    EngineRegistry,
    MockAsrEngine,
    SubprocessAsrEngine,
    WordSpan,
    recognise,
    segment_fingerprint,
    tile_words,
)
from longscribe.errors import EngineUnavailable, ProtocolViolation
from longscribe.media import AudioBuffer

from conftest import tone
from longscribe.vad import SpeechSegment


@pytest.fixture
def buf(rate) -> AudioBuffer:
    return AudioBuffer(tone(440, 2.0), rate)


class TestHypothesis:
    def test_rejects_uppercase(self):
        with pytest.raises(ValueError):
            AsrHypothesis("Dia duit", tile_words("Dia duit", 1.0))

    def test_rejects_digits_and_punctuation(self):
        for bad in ("dia 3", "dia duit."):
            with pytest.raises(ValueError):
                AsrHypothesis(bad, tile_words(bad, 1.0))

    def test_rejects_token_mismatch(self):
        with pytest.raises(ValueError):
            AsrHypothesis("dia duit", (WordSpan("dia", 0.0, 1.0),))

    def test_words_tile_segment(self):
        words = tile_words("go raibh maith agat", 2.0)
        assert words[0].start_s == 0.0
        assert words[-1].end_s == 2.0
        for earlier, later in zip(words, words[1:]):
            assert earlier.end_s == later.start_s

    def test_apostrophe_and_hyphen_allowed(self):
        text = "d'fhág sean-nós"
        AsrHypothesis(text, tile_words(text, 1.0))


class TestMockEngine:
    def test_table_lookup(self, buf):
        seg = SpeechSegment(0.0, 2.0)
        engine = MockAsrEngine({segment_fingerprint(buf, seg): "dia duit"})
        hyp = recognise(buf, seg, engine)
        assert hyp.text == "dia duit"
        assert len(hyp.words) == 2

    def test_deterministic_without_table(self, buf):
        seg = SpeechSegment(0.0, 1.0)
        a = recognise(buf, seg, MockAsrEngine())
        b = recognise(buf, seg, MockAsrEngine())
        assert a == b
        assert a.text  # filler text is non-empty plain lowercase

    def test_zero_length_segment(self, buf):
        with pytest.raises(EmptySegment):
            recognise(buf, SpeechSegment(0.0, 1e-9), MockAsrEngine())

    def test_text_already_plain_under_strip(self, buf):
        from longscribe.cpr import strip_to_input

        seg = SpeechSegment(0.0, 2.0)
        table_engine = MockAsrEngine({segment_fingerprint(buf, seg): "d'fhág sé an sean-nós"})
        for engine in (MockAsrEngine(), table_engine):
            hyp = recognise(buf, seg, engine)
            assert strip_to_input(hyp.text) == hyp.text


def subprocess_engine(stdout_obj, exit_code: int = 0) -> SubprocessAsrEngine:
    script = (
        "import sys\n"
        "sys.stdin.buffer.read()\n"
        f"print({json.dumps(json.dumps(stdout_obj))})\n"
        f"sys.exit({exit_code})\n"
    )
    return SubprocessAsrEngine((sys.executable, "-c", script))


class TestSubprocessEngine:
    def test_valid_output(self, buf):
        hyp_obj = {
            "text": "dia duit",
            "words": [
                {"w": "dia", "s": 0.0, "e": 1.0, "c": 0.9},
                {"w": "duit", "s": 1.0, "e": 2.0, "c": 0.8},
            ],
        }
        hyp = recognise(buf, SpeechSegment(0.0, 2.0), subprocess_engine(hyp_obj))
        assert hyp.text == "dia duit"
        assert hyp.words[1].confidence == 0.8

    def test_uppercase_violates_protocol(self, buf):
        engine = subprocess_engine({"text": "DIA DUIT"})
        with pytest.raises(ProtocolViolation):
            recognise(buf, SpeechSegment(0.0, 2.0), engine)

    def test_word_past_segment_violates_protocol(self, buf):
        hyp_obj = {"text": "dia", "words": [{"w": "dia", "s": 0.0, "e": 9.0, "c": 1.0}]}
        with pytest.raises(ProtocolViolation):
            recognise(buf, SpeechSegment(0.0, 2.0), subprocess_engine(hyp_obj))

    def test_nonzero_exit(self, buf):
        with pytest.raises(EngineUnavailable):
            recognise(buf, SpeechSegment(0.0, 2.0), subprocess_engine({"text": "x"}, exit_code=1))

    def test_missing_binary(self, buf):
        engine = SubprocessAsrEngine(("/nonexistent/asr",))
        with pytest.raises(EngineUnavailable):
            recognise(buf, SpeechSegment(0.0, 2.0), engine)


class TestRegistry:
    def test_ids_unique(self):
        registry = EngineRegistry()
        registry.register(EngineDescriptor("m1", "mock"))
        with pytest.raises(ValueError):
            registry.register(EngineDescriptor("m1", "mock"))

    def test_get_unknown(self):
        with pytest.raises(EngineUnavailable):
            EngineRegistry().get("nope")

    def test_build_kinds(self):
        registry = EngineRegistry()
        assert isinstance(registry.register(EngineDescriptor("a", "mock")), MockAsrEngine)
        assert isinstance(
            registry.register(EngineDescriptor("b", "subprocess", command=("cat",))),
            SubprocessAsrEngine,
        )
        with pytest.raises(ValueError):
            EngineDescriptor("c", "grpc")
