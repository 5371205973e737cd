"""Scoring front end: emits one JSON report per invocation.

    score --metric wer|werpc|cer|bleu|acc ref.txt hyp.txt [--which cap|punct]

Text metrics treat each line as one sentence and report the corpus-level
rate (pooled edit counts over pooled reference length). The acc metric
reads label files in the `cpr labels` TSV format.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .align import align
from .bleu import bleu
from .rates import EmptyReference, classifier_accuracy


def _read_lines(path: str) -> list[str]:
    return Path(path).read_text(encoding="utf-8").splitlines()


def _read_labels(path: str) -> list[tuple[str, str]]:
    labels = []
    for line in _read_lines(path):
        if not line.strip():
            continue
        _tok, cap, punct = line.split("\t")
        labels.append((cap, punct))
    return labels


def _pooled_rate(ref_lines, hyp_lines, tokenise) -> dict:
    if len(ref_lines) != len(hyp_lines):
        raise SystemExit("reference and hypothesis line counts differ")
    edits = 0
    ref_total = 0
    for ref, hyp in zip(ref_lines, hyp_lines):
        a = align(tokenise(ref), tokenise(hyp))
        edits += a.distance
        ref_total += len(tokenise(ref))
    if ref_total == 0:
        raise EmptyReference("reference corpus is empty")
    return {"errors": edits, "reference_length": ref_total, "rate": edits / ref_total}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="score", description=__doc__)
    parser.add_argument("--metric", required=True, choices=["wer", "werpc", "cer", "bleu", "acc"])
    parser.add_argument("ref")
    parser.add_argument("hyp")
    parser.add_argument("--which", choices=["cap", "punct"], default="cap")
    args = parser.parse_args(argv)

    if args.metric == "acc":
        ref_labels = _read_labels(args.ref)
        hyp_labels = _read_labels(args.hyp)
        idx = 0 if args.which == "cap" else 1
        value = classifier_accuracy(
            [lab[idx] for lab in ref_labels], [lab[idx] for lab in hyp_labels], args.which
        )
        report = {"metric": "acc", "which": args.which, "accuracy": value}
    else:
        ref_lines = _read_lines(args.ref)
        hyp_lines = _read_lines(args.hyp)
        if args.metric == "bleu":
            result = bleu([ref_lines], hyp_lines)
            report = {
                "metric": "bleu",
                "score": result.score,
                "precisions": list(result.precisions),
                "brevity_penalty": result.brevity_penalty,
            }
        elif args.metric == "cer":
            report = {"metric": "cer", **_pooled_rate(ref_lines, hyp_lines, lambda s: " ".join(s.split()))}
        else:
            report = {"metric": args.metric, **_pooled_rate(ref_lines, hyp_lines, str.split)}

    json.dump(report, sys.stdout)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
