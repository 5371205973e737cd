"""Command line front end for the restoration text chain.

    cpr clean [in] [-o out]
    cpr normalise [in] [-o out] [--tables DIR]
    cpr strip [in] [-o out]
    cpr labels [in] [-o out]          # token<TAB>CAP<TAB>PUNCT lines
    cpr apply [in] [-o out]           # inverse of labels
    cpr restore [in] [-o out] --engine identity|cmd:<shell command>

File arguments default to stdin and stdout; sentences are one per line.
"""

from __future__ import annotations

import argparse
import shlex
import sys

from .cleaning import clean_corpus
from .labels import TokenLabel, apply_labels, extract_labels
from .normalise import load_tables, normalise
from .restore import IdentityRestorer, SubprocessRestorer, restore
from .strip import strip_to_input


def _open_in(arg):
    return open(arg, encoding="utf-8") if arg else sys.stdin


def _open_out(arg):
    return open(arg, "w", encoding="utf-8") if arg else sys.stdout


def _per_line(args, fn) -> int:
    with _open_in(args.infile) as src, _open_out(args.out) as dst:
        for line in src:
            dst.write(fn(line.rstrip("\n")) + "\n")
    return 0


def _cmd_labels(args) -> int:
    def fn(line: str) -> str:
        tokens, labels = extract_labels(line)
        rows = [f"{tok}\t{lab.cap}\t{lab.punct}" for tok, lab in zip(tokens, labels)]
        return "\n".join(rows) if rows else ""

    with _open_in(args.infile) as src, _open_out(args.out) as dst:
        for line in src:
            block = fn(line.rstrip("\n"))
            if block:
                dst.write(block + "\n")
            dst.write("\n")  # blank line separates sentences
    return 0


def _cmd_apply(args) -> int:
    with _open_in(args.infile) as src, _open_out(args.out) as dst:
        tokens: list[str] = []
        labels: list[TokenLabel] = []
        for line in src:
            line = line.rstrip("\n")
            if not line:
                if tokens:
                    dst.write(apply_labels(tokens, labels) + "\n")
                    tokens, labels = [], []
                continue
            tok, cap, punct = line.split("\t")
            tokens.append(tok)
            labels.append(TokenLabel(cap, punct))
        if tokens:
            dst.write(apply_labels(tokens, labels) + "\n")
    return 0


def _cmd_restore(args) -> int:
    if args.engine == "identity":
        engine = IdentityRestorer()
    elif args.engine.startswith("cmd:"):
        engine = SubprocessRestorer(tuple(shlex.split(args.engine[4:])))
    else:
        print(f"unknown engine {args.engine!r}", file=sys.stderr)
        return 2
    return _per_line(args, lambda line: restore(line, engine))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("infile", nargs="?", default=None)
        p.add_argument("-o", "--out", default=None)
        return p

    add("clean", "clean raw text to display form").set_defaults(
        runner=lambda args: _per_line(args, clean_corpus)
    )

    p = add("normalise", "expand digits, acronyms and symbols")
    p.add_argument("--tables", default=None)
    p.set_defaults(
        runner=lambda args: _per_line(
            args, lambda line, t=load_tables(args.tables): normalise(line, t)
        )
    )

    add("strip", "lowercase and drop non-alphabetic characters").set_defaults(
        runner=lambda args: _per_line(args, strip_to_input)
    )
    add("labels", "extract per-token class labels").set_defaults(runner=_cmd_labels)
    add("apply", "apply class labels back onto tokens").set_defaults(runner=_cmd_apply)

    p = add("restore", "run a restoration engine over plain input")
    p.add_argument("--engine", default="identity")
    p.set_defaults(runner=_cmd_restore)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.runner(args)


if __name__ == "__main__":
    raise SystemExit(main())
