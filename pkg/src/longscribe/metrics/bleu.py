"""Corpus BLEU over whitespace tokens.

Standard 4-gram formulation: clipped n-gram precision aggregated over the
corpus, geometric mean, and the brevity penalty exp(1 - r/h) when the
hypothesis is shorter than the reference. Higher-order precisions with zero
matches are smoothed to 1 / (2 * candidate n-gram count) so short corpora
still score; a zero unigram precision scores 0.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

MAX_ORDER = 4


class EmptyHypothesisCorpus(ValueError):
    """BLEU needs at least one hypothesis sentence with tokens."""


@dataclass(frozen=True)
class BleuReport:
    score: float
    precisions: tuple[float, float, float, float]
    brevity_penalty: float


def _tokens(sentence) -> list[str]:
    if isinstance(sentence, str):
        return sentence.split()
    return list(sentence)


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(refs: Sequence[Sequence], hyp: Sequence) -> BleuReport:
    """Corpus BLEU of a hypothesis corpus against one or more reference corpora.

    refs holds one or more reference corpora, each aligned sentence-for-
    sentence with hyp. The reference length r uses the closest reference
    length per sentence, ties to the shorter.
    """
    if not refs:
        raise ValueError("need at least one reference corpus")
    hyp_sentences = [_tokens(s) for s in hyp]
    ref_corpora = [[_tokens(s) for s in corpus] for corpus in refs]
    for corpus in ref_corpora:
        if len(corpus) != len(hyp_sentences):
            raise ValueError("reference corpus length differs from hypothesis corpus")
    if not hyp_sentences or all(not s for s in hyp_sentences):
        raise EmptyHypothesisCorpus("hypothesis corpus has no tokens")

    matched = [0] * MAX_ORDER
    total = [0] * MAX_ORDER
    hyp_len = 0
    ref_len = 0
    for i, hyp_tokens in enumerate(hyp_sentences):
        hyp_len += len(hyp_tokens)
        lengths = [len(corpus[i]) for corpus in ref_corpora]
        ref_len += min(lengths, key=lambda L: (abs(L - len(hyp_tokens)), L))
        for n in range(1, MAX_ORDER + 1):
            cand = _ngrams(hyp_tokens, n)
            if not cand:
                continue
            best_ref = Counter()
            for corpus in ref_corpora:
                for gram, count in _ngrams(corpus[i], n).items():
                    if count > best_ref[gram]:
                        best_ref[gram] = count
            total[n - 1] += sum(cand.values())
            matched[n - 1] += sum(min(count, best_ref[gram]) for gram, count in cand.items())

    precisions = []
    for n in range(MAX_ORDER):
        if matched[n] > 0:
            precisions.append(matched[n] / total[n])
        elif n == 0:
            precisions.append(0.0)
        else:
            precisions.append(1.0 / (2 * max(total[n], 1)))

    brevity = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    if precisions[0] == 0.0:
        score = 0.0
    else:
        score = brevity * math.exp(sum(math.log(p) for p in precisions) / MAX_ORDER) * 100.0
    return BleuReport(score, tuple(precisions), brevity)
