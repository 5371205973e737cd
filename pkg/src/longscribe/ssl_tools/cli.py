"""Command line front end for the semi-supervised toolbox.

    ssl-tools lm-train --order N corpus.txt out.lm
    ssl-tools rescore --scale S lat-dir lm [-o out-dir]
    ssl-tools pseudo-label lat-dir lm --scale S -o manifest.jsonl
    ssl-tools combine sup.jsonl pseudo.jsonl -o semi.jsonl
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .lattice import InvalidLattice, format_lattice, parse_lattice, rescore_lattice
from .manifest import build_semisup_manifest, pseudo_label, read_manifest, write_manifest
from .ngram import NGramModel, train_ngram


def _load_model(path: str) -> NGramModel:
    return NGramModel.from_json(Path(path).read_text(encoding="utf-8"))


def _cmd_lm_train(args) -> int:
    with open(args.corpus, encoding="utf-8") as fh:
        model = train_ngram(fh, args.order)
    Path(args.out).write_text(model.to_json(), encoding="utf-8")
    print(f"trained order-{args.order} model over {len(model.vocab)} types -> {args.out}")
    return 0


def _cmd_rescore(args) -> int:
    lm = _load_model(args.lm)
    out_dir = Path(args.out) if args.out else Path(str(args.lat_dir) + ".rescored")
    out_dir.mkdir(parents=True, exist_ok=True)
    n = skipped = 0
    for path in sorted(Path(args.lat_dir).glob("*.lat")):
        try:
            lat = parse_lattice(path.read_text(encoding="utf-8"))
            rescored = rescore_lattice(lat, lm, args.scale)
        except InvalidLattice as exc:
            print(f"skipped {path}: {exc}", file=sys.stderr)
            skipped += 1
            continue
        (out_dir / path.name).write_text(format_lattice(rescored), encoding="utf-8")
        n += 1
    print(f"rescored {n} lattices ({skipped} skipped) -> {out_dir}")
    return 0


def _cmd_pseudo_label(args) -> int:
    lm = _load_model(args.lm)
    skipped = []

    def report(path, exc):
        skipped.append(path)
        print(f"skipped {path}: {exc}", file=sys.stderr)

    manifest = pseudo_label(args.lat_dir, lm, args.scale, on_skip=report)
    write_manifest(manifest, args.out)
    print(f"wrote {len(manifest)} pseudo-label records ({len(skipped)} skipped) -> {args.out}")
    return 0


def _cmd_combine(args) -> int:
    supervised = read_manifest(args.supervised)
    pseudo = read_manifest(args.pseudo)
    combined = build_semisup_manifest(supervised, pseudo)
    write_manifest(combined, args.out)
    print(f"combined {len(supervised)} + {len(pseudo)} -> {len(combined)} records at {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ssl-tools", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lm-train", help="train a Witten-Bell smoothed n-gram model")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("corpus")
    p.add_argument("out")
    p.set_defaults(func=_cmd_lm_train)

    p = sub.add_parser("rescore", help="rescore every lattice in a directory")
    p.add_argument("--scale", type=float, required=True)
    p.add_argument("lat_dir")
    p.add_argument("lm")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_rescore)

    p = sub.add_parser("pseudo-label", help="extract best-path transcripts as a manifest")
    p.add_argument("lat_dir")
    p.add_argument("lm")
    p.add_argument("--scale", type=float, required=True)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=_cmd_pseudo_label)

    p = sub.add_parser("combine", help="combine manifests with equal weighting")
    p.add_argument("supervised")
    p.add_argument("pseudo")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=_cmd_combine)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
