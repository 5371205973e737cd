"""Reduction of normalised text to plain recogniser-style input."""

from __future__ import annotations

# Apostrophes and hyphens behave as word-internal letters in Irish
# orthography (elisions, compounds) and survive stripping.
WORD_MARKS = "'-"


def strip_to_input(nr: str) -> str:
    """Lowercase and drop every non-alphabetic character except ' and -.

    Token count is preserved for purely alphabetic tokens; tokens left with
    no letters at all (pure punctuation, stray dashes) disappear.
    """
    kept = []
    for ch in nr:
        if ch.isalpha():
            kept.append(ch.lower())
        elif ch in WORD_MARKS or ch == " ":
            kept.append(ch)
        else:
            kept.append(" ")
    tokens = "".join(kept).split()
    return " ".join(tok for tok in tokens if any(ch.isalpha() for ch in tok))


def validate_plain(text: str) -> None:
    """Raise ValueError unless text is lowercase plain input."""
    for ch in text:
        if ch == " " or ch in WORD_MARKS:
            continue
        if not ch.isalpha():
            raise ValueError(f"non-alphabetic character {ch!r} in plain input")
        if ch.isupper():
            raise ValueError(f"uppercase character {ch!r} in plain input")
