"""N-gram language modelling with Witten-Bell smoothing.

The conditional P(w | h) interpolates the maximum-likelihood estimate with
the next-shorter context, weighting the backoff by the number of distinct
continuation types seen after h:

    P(w | h) = (c(h, w) + T(h) * P(w | h')) / (c(h) + T(h))

The recursion bottoms out in a unigram estimate interpolated with a uniform
distribution over the event space (training vocabulary, the end-of-sentence
marker, and an unknown-word class), so every context sums to one and no
token ever has zero probability.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from typing import Iterable, Sequence

BOS = "<s>"
EOS = "</s>"
UNK = "<unk>"


class EmptyCorpus(ValueError):
    """Training input contained no tokens."""


class NGramModel:
    def __init__(self, order: int, counts: dict[tuple[str, ...], Counter]):
        if order < 1:
            raise ValueError(f"order must be >= 1, got {order}")
        self.order = order
        self.counts = counts
        self._totals = {ctx: sum(c.values()) for ctx, c in counts.items()}
        self._types = {ctx: len(c) for ctx, c in counts.items()}
        vocab = set()
        for ctx_counts in counts.values():
            vocab.update(ctx_counts)
        vocab.discard(BOS)
        self.vocab = vocab  # predictable tokens seen in training, incl. EOS
        self.event_space = vocab | {UNK}

    def ngram_count(self, context: Sequence[str], word: str) -> int:
        return self.counts.get(tuple(context), Counter())[word]

    def context_count(self, context: Sequence[str]) -> int:
        return self._totals.get(tuple(context), 0)

    def prob(self, word: str, context: Sequence[str] = ()) -> float:
        """Witten-Bell smoothed P(word | context)."""
        if word not in self.event_space:
            word = UNK
        ctx = tuple(context)[-(self.order - 1) :] if self.order > 1 else ()
        return self._prob(word, ctx)

    def _prob(self, word: str, ctx: tuple[str, ...]) -> float:
        if not ctx:
            total = self._totals.get((), 0)
            types = self._types.get((), 0)
            uniform = 1.0 / len(self.event_space)
            return (self.counts.get((), Counter())[word] + types * uniform) / (total + types)
        total = self._totals.get(ctx, 0)
        types = self._types.get(ctx, 0)
        if total + types == 0:
            return self._prob(word, ctx[1:])
        count = self.counts[ctx][word]
        return (count + types * self._prob(word, ctx[1:])) / (total + types)

    def logprob(self, word: str, context: Sequence[str] = ()) -> float:
        return math.log(self.prob(word, context))

    def contexts(self) -> Iterable[tuple[str, ...]]:
        return self.counts.keys()

    def to_json(self) -> str:
        payload = {
            "order": self.order,
            "contexts": [
                {"ctx": list(ctx), "counts": dict(cnt)} for ctx, cnt in self.counts.items()
            ],
        }
        return json.dumps(payload, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "NGramModel":
        payload = json.loads(text)
        counts = {
            tuple(entry["ctx"]): Counter(entry["counts"]) for entry in payload["contexts"]
        }
        return cls(payload["order"], counts)


def _tokenise(line) -> list[str]:
    if isinstance(line, str):
        return line.split()
    return list(line)


def train_ngram(corpus: Iterable, n: int) -> NGramModel:
    """Count n-grams (and all backoff orders) over a stream of token lines.

    Each line is one sentence; sentence boundaries contribute BOS context
    and an EOS prediction. Blank lines are skipped.
    """
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    counts: dict[tuple[str, ...], Counter] = {}
    saw_tokens = False
    for line in corpus:
        tokens = _tokenise(line)
        if not tokens:
            continue
        saw_tokens = True
        padded = [BOS] * (n - 1) + tokens + [EOS]
        for i in range(n - 1, len(padded)):
            word = padded[i]
            for ctx_len in range(n):
                ctx = tuple(padded[i - ctx_len : i])
                counts.setdefault(ctx, Counter())[word] += 1
    if not saw_tokens:
        raise EmptyCorpus("no tokens in training corpus")
    return NGramModel(n, counts)


def score_sequence(lm: NGramModel, tokens) -> float:
    """Natural-log probability of the token sequence, with boundary tokens.

    An empty sequence scores log P(EOS | BOS context) alone.
    """
    toks = _tokenise(tokens)
    history = [BOS] * (lm.order - 1)
    total = 0.0
    for tok in toks + [EOS]:
        total += lm.logprob(tok, history)
        history = (history + [tok])[-(lm.order - 1) :] if lm.order > 1 else []
    return total
