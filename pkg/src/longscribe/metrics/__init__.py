"""Transcription evaluation metrics."""

from .align import EditAlignment, align
from .bleu import BleuReport, EmptyHypothesisCorpus, bleu
from .rates import EmptyReference, cer, classifier_accuracy, wer, wer_pc

__all__ = [
    "BleuReport",
    "EditAlignment",
    "EmptyHypothesisCorpus",
    "EmptyReference",
    "align",
    "bleu",
    "cer",
    "classifier_accuracy",
    "wer",
    "wer_pc",
]
