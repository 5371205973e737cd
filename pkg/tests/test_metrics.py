"""Metrics against brute-force oracles and hand arithmetic."""

from __future__ import annotations

import itertools
import math
import random
from functools import lru_cache

import pytest

from longscribe.errors import LengthMismatch
from longscribe.metrics import (
    EmptyHypothesisCorpus,
    EmptyReference,
    align,
    bleu,
    cer,
    classifier_accuracy,
    wer,
    wer_pc,
)

ALPHABET = "abc"


def oracle_min_scripts(ref: str, hyp: str) -> tuple[int, set[tuple[int, int, int, int]]]:
    """Exhaustive edit-script search: minimal cost plus every (hits, subs,
    dels, ins) tuple achieved by some minimal script. Memoised recursion
    over suffixes, independent of the iterative matrix in align()."""

    @lru_cache(maxsize=None)
    def rec(i: int, j: int) -> tuple[int, frozenset]:
        if i == len(ref) and j == len(hyp):
            return 0, frozenset({(0, 0, 0, 0)})
        options: list[tuple[int, tuple[int, int, int, int], tuple[int, int]]] = []
        if i < len(ref) and j < len(hyp) and ref[i] == hyp[j]:
            options.append((0, (1, 0, 0, 0), (i + 1, j + 1)))
        if i < len(ref) and j < len(hyp):
            options.append((1, (0, 1, 0, 0), (i + 1, j + 1)))
        if i < len(ref):
            options.append((1, (0, 0, 1, 0), (i + 1, j)))
        if j < len(hyp):
            options.append((1, (0, 0, 0, 1), (i, j + 1)))
        best_cost = None
        tuples: set = set()
        for step_cost, delta, nxt in options:
            sub_cost, sub_tuples = rec(*nxt)
            cost = step_cost + sub_cost
            if best_cost is None or cost < best_cost:
                best_cost = cost
                tuples = set()
            if cost == best_cost:
                for t in sub_tuples:
                    tuples.add(tuple(a + b for a, b in zip(delta, t)))
        return best_cost, frozenset(tuples)

    cost, tuples = rec(0, 0)
    rec.cache_clear()
    return cost, set(tuples)


def all_pairs(max_combined: int):
    for total in range(max_combined + 1):
        for len_ref in range(total + 1):
            len_hyp = total - len_ref
            for ref in itertools.product(ALPHABET, repeat=len_ref):
                for hyp in itertools.product(ALPHABET, repeat=len_hyp):
                    yield "".join(ref), "".join(hyp)


def check_pair_against_oracle(ref: str, hyp: str) -> None:
    cost, minimal_tuples = oracle_min_scripts(ref, hyp)
    a = align(ref, hyp)
    assert a.distance == cost
    assert (a.hits, a.substitutions, a.deletions, a.insertions) in minimal_tuples
    assert a.hits + a.substitutions + a.deletions == len(ref)
    assert a.hits + a.substitutions + a.insertions == len(hyp)


class TestAlignOracle:
    def test_exhaustive_small_pairs(self):
        for ref, hyp in all_pairs(6):
            check_pair_against_oracle(ref, hyp)

    def test_random_pairs_up_to_twelve(self):
        rng = random.Random(424242)
        for _ in range(1500):
            total = rng.randint(7, 12)
            len_ref = rng.randint(0, total)
            ref = "".join(rng.choice(ALPHABET) for _ in range(len_ref))
            hyp = "".join(rng.choice(ALPHABET) for _ in range(total - len_ref))
            check_pair_against_oracle(ref, hyp)

    def test_backtrace_preference_fixed_cases(self):
        a = align(list("abc"), list("axc"))
        assert (a.hits, a.substitutions, a.deletions, a.insertions) == (2, 1, 0, 0)
        b = align(["a"], [])
        assert (b.hits, b.substitutions, b.deletions, b.insertions) == (0, 0, 1, 0)
        c = align(list("ab"), list("ba"))  # hit-first backtrace picks double sub
        assert (c.hits, c.substitutions, c.deletions, c.insertions) == (0, 2, 0, 0)


class TestWer:
    def test_identical(self):
        assert wer("a b c", "a b c") == 0.0

    def test_one_substitution(self):
        assert wer("a b c", "a x c") == pytest.approx(1 / 3, abs=1e-9)

    def test_insertion_only(self):
        assert wer("a", "a b") == pytest.approx(1.0)

    def test_empty_reference(self):
        with pytest.raises(EmptyReference):
            wer("", "a")

    def test_symbol_renaming_invariance(self):
        rng = random.Random(8)
        for _ in range(100):
            ref = [rng.choice("abc") for _ in range(rng.randint(1, 8))]
            hyp = [rng.choice("abc") for _ in range(rng.randint(0, 8))]
            mapping = {"a": "xx", "b": "yy", "c": "zz"}
            assert wer(ref, hyp) == wer([mapping[t] for t in ref], [mapping[t] for t in hyp])


class TestWerPc:
    def test_identical_rich(self):
        assert wer_pc("Tá sé.", "Tá sé.") == 0.0

    def test_case_mismatch_counts(self):
        assert wer_pc("Tá sé.", "tá sé.") == pytest.approx(0.5)

    def test_punctuation_attached(self):
        assert wer_pc("ceart?", "ceart") == pytest.approx(1.0)


class TestCer:
    def test_identical(self):
        assert cer("abc", "abc") == 0.0

    def test_one_substitution(self):
        assert cer("abc", "abd") == pytest.approx(1 / 3, abs=1e-9)

    def test_space_deletion(self):
        assert cer("a b", "ab") == pytest.approx(1 / 3, abs=1e-9)

    def test_whitespace_runs_collapse(self):
        assert cer("a  b", "a b") == 0.0

    def test_equals_wer_with_per_character_tokens(self):
        rng = random.Random(12)
        for _ in range(50):
            ref = " ".join(rng.choice("abc") for _ in range(rng.randint(1, 6)))
            hyp = " ".join(rng.choice("abc") for _ in range(rng.randint(0, 6)))
            assert cer(ref, hyp) == wer(list(ref), list(hyp))


class TestBleu:
    def test_identical_corpus_scores_hundred(self):
        corpus = ["dia duit a chara", "go raibh maith agat anois"]
        report = bleu([corpus], corpus)
        assert report.score == pytest.approx(100.0, abs=1e-9)
        assert report.brevity_penalty == 1.0

    def test_hand_case(self):
        report = bleu([["a b c d"]], ["a b c"])
        assert report.precisions[0] == pytest.approx(1.0)
        assert report.precisions[1] == pytest.approx(1.0)
        assert report.precisions[2] == pytest.approx(1.0)
        assert report.precisions[3] == pytest.approx(0.5)  # 1 / (2 * max(0 four-grams, 1))
        assert report.brevity_penalty == pytest.approx(math.exp(1 - 4 / 3), abs=1e-12)
        expected = math.exp(1 - 4 / 3) * (1.0 * 1.0 * 1.0 * 0.5) ** 0.25 * 100.0
        assert report.score == pytest.approx(expected, abs=1e-6)

    def test_disjoint_vocabulary_near_zero(self):
        report = bleu([["a b c d"]], ["x y z w"])
        assert report.score < 1.0

    def test_score_bounded(self):
        rng = random.Random(3)
        vocab = "abcde"
        for _ in range(50):
            ref = [" ".join(rng.choice(vocab) for _ in range(rng.randint(1, 10)))]
            hyp = [" ".join(rng.choice(vocab) for _ in range(rng.randint(1, 10)))]
            report = bleu([ref], hyp)
            assert 0.0 <= report.score <= 100.0 + 1e-9
            if report.score == pytest.approx(100.0, abs=1e-9):
                assert [h.split() for h in hyp] == [r.split() for r in ref]

    def test_invariant_score_decomposition(self):
        report = bleu([["a b c d"]], ["a b c"])
        geo = math.exp(sum(math.log(p) for p in report.precisions) / 4)
        assert report.score == pytest.approx(report.brevity_penalty * geo * 100.0, abs=1e-9)

    def test_empty_hypothesis_corpus(self):
        with pytest.raises(EmptyHypothesisCorpus):
            bleu([[""]], [""])


class TestAccuracy:
    def test_identical(self):
        from longscribe.cpr import TokenLabel

        labels = [TokenLabel("CAP1", "NONE"), TokenLabel("LOWER", "PERIOD")]
        assert classifier_accuracy(labels, labels, "cap") == 1.0
        assert classifier_accuracy(labels, labels, "punct") == 1.0

    def test_one_in_four(self):
        from longscribe.cpr import TokenLabel

        ref = [TokenLabel("LOWER", "NONE")] * 4
        hyp = [TokenLabel("LOWER", "NONE")] * 3 + [TokenLabel("CAP1", "NONE")]
        assert classifier_accuracy(ref, hyp, "cap") == 0.75
        assert classifier_accuracy(ref, hyp, "punct") == 1.0

    def test_plain_strings(self):
        assert classifier_accuracy(["CAP1", "LOWER"], ["CAP1", "CAP1"], "cap") == 0.5

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            classifier_accuracy(["CAP1"], [], "cap")
