"""Corpus cleaning: bracket removal, quote standardisation, character whitelist."""

from __future__ import annotations

import re
import unicodedata

BRACKET_CHARS = "()[]{}"

# Smart and typographic quote variants fold onto plain ASCII quotes.
QUOTE_MAP = str.maketrans(
    {
        "“": '"',  # left double
        "”": '"',  # right double
        "„": '"',  # low double
        "«": '"',  # left guillemet
        "»": '"',  # right guillemet
        "‘": "'",  # left single
        "’": "'",  # right single
        "‚": "'",  # low single
        "`": "'",  # backtick
        "´": "'",  # acute accent
        "–": "-",  # en dash
        "—": "-",  # em dash
    }
)

ALLOWED_MARKS = set(".,?!;:'\"-%€£§")

_WS_RE = re.compile(r"\s+")


def _is_allowed(ch: str) -> bool:
    if ch == " " or ch in ALLOWED_MARKS:
        return True
    category = unicodedata.category(ch)
    return category.startswith("L") or category == "Nd"


def clean_corpus(raw: str) -> str:
    """Reduce arbitrary text to the cleaned display form.

    Bracket delimiters are removed with their content kept, quote variants
    fold onto plain quotes, characters outside the whitelist (letters,
    digits, space, common punctuation, expandable symbols) are dropped, and
    whitespace collapses to single spaces. Idempotent on its own output.
    """
    text = raw.translate(QUOTE_MAP)
    text = "".join(ch for ch in text if ch not in BRACKET_CHARS)
    text = "".join(ch if _is_allowed(ch) else " " for ch in text)
    return _WS_RE.sub(" ", text).strip()


def validate_rich(text: str) -> None:
    """Raise ValueError unless text satisfies the cleaned-transcript form."""
    for ch in text:
        if ch in BRACKET_CHARS:
            raise ValueError(f"bracket character {ch!r} in rich transcript")
        if not _is_allowed(ch):
            raise ValueError(f"disallowed character {ch!r} in rich transcript")
    if _WS_RE.sub(" ", text).strip() != text:
        raise ValueError("rich transcript must be single-spaced with no edge whitespace")
