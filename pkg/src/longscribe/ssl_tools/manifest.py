"""Training manifests: (utterance, transcript, weight) records as JSON lines."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .lattice import InvalidLattice, NoPath, best_path, parse_lattice, rescore_lattice
from .ngram import NGramModel

ORIGINS = ("supervised", "pseudo")


class DuplicateUttId(ValueError):
    """Two records claim the same utterance id."""


@dataclass(frozen=True)
class ManifestRecord:
    utt_id: str
    audio_path: str
    transcript: str
    weight: float = 1.0
    origin: str = "supervised"

    def __post_init__(self):
        if not self.utt_id:
            raise ValueError("utt_id must be non-empty")
        if self.weight <= 0:
            raise ValueError(f"weight must be positive, got {self.weight}")
        if self.origin not in ORIGINS:
            raise ValueError(f"origin must be one of {ORIGINS}, got {self.origin!r}")


@dataclass(frozen=True)
class TrainingManifest:
    records: tuple[ManifestRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        seen = set()
        for rec in self.records:
            if rec.utt_id in seen:
                raise DuplicateUttId(f"duplicate utt_id {rec.utt_id!r}")
            seen.add(rec.utt_id)

    def __len__(self) -> int:
        return len(self.records)


def build_semisup_manifest(supervised: TrainingManifest, pseudo: TrainingManifest) -> TrainingManifest:
    """Concatenate both sets with every record reweighted to 1.0.

    Origins are preserved; colliding utterance ids raise DuplicateUttId.
    """
    combined = [replace(rec, weight=1.0) for rec in supervised.records]
    combined += [replace(rec, weight=1.0) for rec in pseudo.records]
    return TrainingManifest(tuple(combined))


def write_manifest(manifest: TrainingManifest, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in manifest.records:
            fh.write(
                json.dumps(
                    {
                        "utt_id": rec.utt_id,
                        "audio_path": rec.audio_path,
                        "transcript": rec.transcript,
                        "weight": rec.weight,
                        "origin": rec.origin,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def read_manifest(path: str | Path) -> TrainingManifest:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            records.append(
                ManifestRecord(
                    obj["utt_id"],
                    obj.get("audio_path", ""),
                    obj["transcript"],
                    float(obj.get("weight", 1.0)),
                    obj.get("origin", "supervised"),
                )
            )
    return TrainingManifest(tuple(records))


def pseudo_label(
    lattice_dir: str | Path,
    lm: NGramModel,
    lm_scale: float,
    on_skip: Callable[[Path, Exception], None] | None = None,
) -> TrainingManifest:
    """Rescore every .lat file in a directory and take its best path as a
    pseudo-label. Invalid lattices are skipped and reported via on_skip.

    The record's audio reference is the lattice file itself; the lattice
    format carries no separate audio path.
    """
    records = []
    for path in sorted(Path(lattice_dir).glob("*.lat")):
        try:
            lat = parse_lattice(path.read_text(encoding="utf-8"))
            words = best_path(rescore_lattice(lat, lm, lm_scale))
        except (InvalidLattice, NoPath) as exc:
            if on_skip is not None:
                on_skip(path, exc)
            continue
        records.append(
            ManifestRecord(
                utt_id=path.stem,
                audio_path=str(path),
                transcript=" ".join(words),
                weight=1.0,
                origin="pseudo",
            )
        )
    return TrainingManifest(tuple(records))
