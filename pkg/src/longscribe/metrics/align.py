"""Minimal edit-distance alignment with deterministic backtrace."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class EditAlignment:
    """Counts from one minimal uniform-cost alignment of hyp against ref."""

    hits: int
    substitutions: int
    deletions: int
    insertions: int

    def __post_init__(self):
        if min(self.hits, self.substitutions, self.deletions, self.insertions) < 0:
            raise ValueError("alignment counts must be non-negative")

    @property
    def distance(self) -> int:
        return self.substitutions + self.deletions + self.insertions


def align(ref: Sequence, hyp: Sequence) -> EditAlignment:
    """Minimal uniform-cost alignment of hyp against ref.

    Ties during the backtrace resolve in the fixed order hit, substitution,
    deletion, insertion, so the count split is deterministic.
    """
    n, m = len(ref), len(hyp)
    dist = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        dist[i][0] = i
    for j in range(1, m + 1):
        dist[0][j] = j
    for i in range(1, n + 1):
        row = dist[i]
        prev = dist[i - 1]
        for j in range(1, m + 1):
            if ref[i - 1] == hyp[j - 1]:
                row[j] = prev[j - 1]
            else:
                row[j] = 1 + min(prev[j - 1], prev[j], row[j - 1])

    hits = subs = dels = ins = 0
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0 and ref[i - 1] == hyp[j - 1] and dist[i][j] == dist[i - 1][j - 1]:
            hits += 1
            i -= 1
            j -= 1
        elif i > 0 and j > 0 and dist[i][j] == dist[i - 1][j - 1] + 1:
            subs += 1
            i -= 1
            j -= 1
        elif i > 0 and dist[i][j] == dist[i - 1][j] + 1:
            dels += 1
            i -= 1
        else:
            ins += 1
            j -= 1
    return EditAlignment(hits, subs, dels, ins)
