"""Manifests: equal-weight combination, JSONL round trip, pseudo-labelling."""

from __future__ import annotations

import pytest

from longscribe.ssl_tools import (
    DuplicateUttId,
    ManifestRecord,
    TrainingManifest,
    build_semisup_manifest,
    pseudo_label,
    read_manifest,
    train_ngram,
    write_manifest,
)


def rec(utt_id: str, origin: str = "supervised", weight: float = 1.0) -> ManifestRecord:
    return ManifestRecord(utt_id, f"/audio/{utt_id}.wav", "dia duit", weight, origin)


VALID_LATTICE = "LAT v1 start=0 end=2\n0 1 {w1} -1.0 0.0\n1 2 {w2} -1.0 0.0\n"


class TestCombine:
    def test_two_plus_three_equal_weighting(self):
        supervised = TrainingManifest((rec("s1", weight=2.5), rec("s2", weight=0.5)))
        pseudo = TrainingManifest(
            (rec("p1", "pseudo", 0.7), rec("p2", "pseudo", 3.0), rec("p3", "pseudo", 1.0))
        )
        combined = build_semisup_manifest(supervised, pseudo)
        assert len(combined) == 5
        assert all(r.weight == 1.0 for r in combined.records)
        assert [r.origin for r in combined.records] == ["supervised"] * 2 + ["pseudo"] * 3

    def test_empty_pseudo_set(self):
        supervised = TrainingManifest((rec("s1"), rec("s2")))
        combined = build_semisup_manifest(supervised, TrainingManifest(()))
        assert combined.records == supervised.records

    def test_colliding_ids(self):
        with pytest.raises(DuplicateUttId):
            build_semisup_manifest(
                TrainingManifest((rec("x"),)), TrainingManifest((rec("x", "pseudo"),))
            )

    def test_weight_must_be_positive(self):
        with pytest.raises(ValueError):
            ManifestRecord("u", "a.wav", "t", weight=0.0)


class TestJsonl:
    def test_round_trip(self, tmp_path):
        manifest = TrainingManifest((rec("a"), rec("b", "pseudo", 0.25)))
        path = tmp_path / "m.jsonl"
        write_manifest(manifest, path)
        assert read_manifest(path) == manifest


class TestPseudoLabel:
    @pytest.fixture
    def lm(self):
        return train_ngram(["go raibh maith", "dia duit"], 2)

    def test_all_valid(self, tmp_path, lm):
        for i, (w1, w2) in enumerate([("go", "raibh"), ("dia", "duit"), ("maith", "agat")]):
            (tmp_path / f"utt{i}.lat").write_text(VALID_LATTICE.format(w1=w1, w2=w2))
        manifest = pseudo_label(tmp_path, lm, 1.0)
        assert len(manifest) == 3
        assert all(r.origin == "pseudo" and r.weight == 1.0 for r in manifest.records)

    def test_corrupt_file_skipped_and_reported(self, tmp_path, lm):
        (tmp_path / "good1.lat").write_text(VALID_LATTICE.format(w1="dia", w2="duit"))
        (tmp_path / "good2.lat").write_text(VALID_LATTICE.format(w1="go", w2="raibh"))
        (tmp_path / "bad.lat").write_text("LAT v1 start=0 end=1\n0 1 x notanumber 0\n")
        skipped = []
        manifest = pseudo_label(tmp_path, lm, 1.0, on_skip=lambda p, e: skipped.append(p.name))
        assert len(manifest) == 2
        assert skipped == ["bad.lat"]

    def test_transcript_is_best_path_verbatim(self, tmp_path, lm):
        from longscribe.ssl_tools import best_path, parse_lattice, rescore_lattice

        text = VALID_LATTICE.format(w1="dia", w2="duit")
        (tmp_path / "u.lat").write_text(text)
        manifest = pseudo_label(tmp_path, lm, 2.0)
        expected = " ".join(best_path(rescore_lattice(parse_lattice(text), lm, 2.0)))
        assert manifest.records[0].transcript == expected

    def test_zero_scale_invariant_to_model(self, tmp_path):
        lm_a = train_ngram(["dia duit"], 2)
        lm_b = train_ngram(["maith agat go leor anois"], 3)
        (tmp_path / "u1.lat").write_text(VALID_LATTICE.format(w1="dia", w2="duit"))
        (tmp_path / "u2.lat").write_text(VALID_LATTICE.format(w1="go", w2="raibh"))
        out_a = pseudo_label(tmp_path, lm_a, 0.0)
        out_b = pseudo_label(tmp_path, lm_b, 0.0)
        assert out_a == out_b
