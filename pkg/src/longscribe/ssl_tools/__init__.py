"""Offline toolbox for semi-supervised training data preparation.

Covers n-gram language model training, lattice rescoring, best-path
pseudo-label extraction, and equal-weighted manifest combination.
"""

from .lattice import Arc, InvalidLattice, Lattice, NoPath, best_path, parse_lattice, rescore_lattice
from .manifest import (
    DuplicateUttId,
    ManifestRecord,
    TrainingManifest,
    build_semisup_manifest,
    pseudo_label,
    read_manifest,
    write_manifest,
)
from .ngram import BOS, EOS, UNK, EmptyCorpus, NGramModel, score_sequence, train_ngram

__all__ = [
    "Arc",
    "BOS",
    "DuplicateUttId",
    "EOS",
    "EmptyCorpus",
    "InvalidLattice",
    "Lattice",
    "ManifestRecord",
    "NGramModel",
    "NoPath",
    "TrainingManifest",
    "UNK",
    "best_path",
    "build_semisup_manifest",
    "parse_lattice",
    "pseudo_label",
    "read_manifest",
    "rescore_lattice",
    "score_sequence",
    "train_ngram",
    "write_manifest",
]
