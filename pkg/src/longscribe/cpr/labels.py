"""Per-token capitalisation and punctuation classes.

Capitalisation classes mark which letter carries the capital: CAP1 for an
ordinary initial capital, CAP2 and CAP3 for words whose lowercase mutation
prefix (one or two letters) precedes the original capital, as in nGaeilge
or bhFrainc. Punctuation classes name the single trailing mark, if any.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from ..errors import LengthMismatch

CAP_CLASSES = ("LOWER", "CAP1", "CAP2", "CAP3")
PUNCT_CLASSES = ("NONE", "COMMA", "PERIOD", "QUESTION", "EXCLAIM", "SEMICOLON", "COLON")

MARK_TO_CLASS = {
    ",": "COMMA",
    ".": "PERIOD",
    "?": "QUESTION",
    "!": "EXCLAIM",
    ";": "SEMICOLON",
    ":": "COLON",
}
CLASS_TO_MARK = {cls: mark for mark, cls in MARK_TO_CLASS.items()}


class IllegalClass(ValueError):
    """The class cannot apply to the given token."""


class UnsupportedCapPattern(ValueError):
    """First capital sits beyond the third letter; reported, mapped LOWER."""


@dataclass(frozen=True)
class TokenLabel:
    cap: str
    punct: str

    def __post_init__(self):
        if self.cap not in CAP_CLASSES:
            raise ValueError(f"unknown capitalisation class {self.cap!r}")
        if self.punct not in PUNCT_CLASSES:
            raise ValueError(f"unknown punctuation class {self.punct!r}")


def _letters(token: str) -> list[int]:
    """Indices of the letter characters within the token."""
    return [i for i, ch in enumerate(token) if ch.isalpha()]


def _cap_class(core: str, on_unsupported: Callable[[str], None] | None) -> str:
    for pos, idx in enumerate(_letters(core), start=1):
        if core[idx].isupper():
            if pos <= 3:
                return f"CAP{pos}"
            if on_unsupported is not None:
                on_unsupported(core)
            return "LOWER"
    return "LOWER"


def extract_labels(
    nr: str, on_unsupported: Callable[[str], None] | None = None
) -> tuple[list[str], list[TokenLabel]]:
    """Split normalised text into plain tokens plus one label per token.

    The capitalisation class comes from the position of the first uppercase
    letter (counting letters only); the punctuation class from the single
    trailing mark. Tokens whose first capital sits beyond the third letter
    are reported through on_unsupported and labelled LOWER.
    """
    tokens: list[str] = []
    labels: list[TokenLabel] = []
    for token in nr.split():
        if token[-1] in MARK_TO_CLASS:
            punct = MARK_TO_CLASS[token[-1]]
            core = token[:-1]
        else:
            punct = "NONE"
            core = token
        cap = _cap_class(core, on_unsupported)
        plain = "".join(ch.lower() for ch in core if ch.isalpha() or ch in "'-")
        if not any(ch.isalpha() for ch in plain):
            # Pure punctuation token; nothing for a classifier to label.
            continue
        tokens.append(plain)
        labels.append(TokenLabel(cap, punct))
    return tokens, labels


def apply_labels(tokens: Sequence[str], labels: Sequence[TokenLabel]) -> str:
    """Inverse of extract_labels on its image: recapitalise and re-punctuate."""
    if len(tokens) != len(labels):
        raise LengthMismatch(f"{len(tokens)} tokens vs {len(labels)} labels")
    out = []
    for token, label in zip(tokens, labels):
        letters = _letters(token)
        if label.cap != "LOWER":
            target = int(label.cap[3])
            if len(letters) < target:
                raise IllegalClass(f"{label.cap} needs >= {target} letters, token {token!r}")
            idx = letters[target - 1]
            token = token[:idx] + token[idx].upper() + token[idx + 1 :]
        if label.punct != "NONE":
            token += CLASS_TO_MARK[label.punct]
        out.append(token)
    return " ".join(out)
