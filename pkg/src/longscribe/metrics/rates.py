"""Word, rich-word and character error rates, plus label accuracy."""

from __future__ import annotations

import re
from typing import Sequence

from ..errors import LengthMismatch
from .align import align

_WS_RE = re.compile(r"\s+")


class EmptyReference(ValueError):
    """Error rates are undefined against an empty reference."""


def _tokens(text_or_tokens) -> list[str]:
    if isinstance(text_or_tokens, str):
        return text_or_tokens.split()
    return list(text_or_tokens)


def wer(ref, hyp) -> float:
    """(substitutions + insertions + deletions) / reference length."""
    ref_tokens = _tokens(ref)
    hyp_tokens = _tokens(hyp)
    if not ref_tokens:
        raise EmptyReference("reference has no tokens")
    a = align(ref_tokens, hyp_tokens)
    return a.distance / len(ref_tokens)


def wer_pc(ref_rich: str, hyp_rich: str) -> float:
    """Word error rate over rich text, punctuation attached to its word.

    Tokens come from whitespace splitting with no other normalisation, so a
    capitalisation or punctuation difference makes the whole token wrong.
    """
    return wer(ref_rich.split(), hyp_rich.split())


def _canonical_chars(text: str) -> str:
    return _WS_RE.sub(" ", text.strip())


def cer(ref: str, hyp: str) -> float:
    """Character-level error rate; whitespace runs count as one space."""
    ref_chars = _canonical_chars(ref)
    hyp_chars = _canonical_chars(hyp)
    if not ref_chars:
        raise EmptyReference("reference has no characters")
    a = align(ref_chars, hyp_chars)
    return a.distance / len(ref_chars)


def classifier_accuracy(ref_labels: Sequence, hyp_labels: Sequence, which: str) -> float:
    """Fraction of positions whose cap or punct class matches exactly."""
    if which not in ("cap", "punct"):
        raise ValueError(f"which must be 'cap' or 'punct', got {which!r}")
    if len(ref_labels) != len(hyp_labels):
        raise LengthMismatch(f"{len(ref_labels)} reference vs {len(hyp_labels)} hypothesis labels")
    if not ref_labels:
        raise EmptyReference("no labels to score")

    def pick(label):
        return getattr(label, which) if hasattr(label, which) else label

    matches = sum(1 for r, h in zip(ref_labels, hyp_labels) if pick(r) == pick(h))
    return matches / len(ref_labels)
