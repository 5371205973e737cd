"""Expansion of digits, acronyms and symbols into pronounceable Irish words.

Rule tables live in TSV data files (surface<TAB>expansion) so coverage can
grow without code changes. Capitalisation and punctuation elsewhere in the
sentence are left untouched; a capitalised surface form transfers its
initial capital onto the first word of the expansion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping

_LEADING_MARKS = "\"'"
_TRAILING_MARKS = ".,?!;:\"'"

_DIGITS_RE = re.compile(r"^\d+$")
_ORDINAL_RE = re.compile(r"^\d+ú$")
_PERCENT_RE = re.compile(r"^(\d+)%$")
_CURRENCY_RE = re.compile(r"^([€£])(\d+)$")
_SECTION_RE = re.compile(r"^§(\d+)$")


class UnmappableToken(ValueError):
    """A digit-bearing token falls outside the rule tables."""


@dataclass(frozen=True)
class NormalisationTables:
    cardinals: Mapping[str, str]
    ordinals: Mapping[str, str]
    acronyms: Mapping[str, str]
    symbols: Mapping[str, str]
    letters: Mapping[str, str]


def _read_tsv(path: Path) -> dict[str, str]:
    table = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        surface, _, expansion = line.partition("\t")
        table[surface] = expansion.strip()
    return table


def load_tables(data_dir: str | Path | None = None) -> NormalisationTables:
    """Load the TSV rule tables, defaulting to the packaged data files."""
    if data_dir is None:
        data_dir = Path(str(resources.files("longscribe.cpr") / "data"))
    data_dir = Path(data_dir)
    return NormalisationTables(
        cardinals=_read_tsv(data_dir / "cardinals_ga.tsv"),
        ordinals=_read_tsv(data_dir / "ordinals_ga.tsv"),
        acronyms=_read_tsv(data_dir / "acronyms_ga.tsv"),
        symbols=_read_tsv(data_dir / "symbols_ga.tsv"),
        letters=_read_tsv(data_dir / "letters_ga.tsv"),
    )


def spell_acronym(word: str, tables: NormalisationTables) -> str:
    """Letter-name spelling, for extending the acronym table."""
    names = []
    for ch in word:
        name = tables.letters.get(ch.lower())
        if name is None:
            raise UnmappableToken(f"no letter name for {ch!r}")
        names.append(name)
    return " ".join(names)


def _transfer_case(surface: str, expansion: str) -> str:
    if surface and surface[0].isupper() and expansion:
        return expansion[0].upper() + expansion[1:]
    return expansion


def _cardinal(digits: str, tables: NormalisationTables) -> str:
    words = tables.cardinals.get(digits.lstrip("0") or "0")
    if words is None:
        raise UnmappableToken(f"cardinal {digits!r} exceeds table coverage")
    return words


def _expand_core(core: str, tables: NormalisationTables) -> str | None:
    """Expansion for the bare token core, or None when no rule applies."""
    if core in tables.acronyms:
        return tables.acronyms[core]
    if _DIGITS_RE.match(core):
        return _cardinal(core, tables)
    if _ORDINAL_RE.match(core):
        words = tables.ordinals.get(core)
        if words is None:
            raise UnmappableToken(f"ordinal {core!r} exceeds table coverage")
        return words
    m = _PERCENT_RE.match(core)
    if m:
        return f"{_cardinal(m.group(1), tables)} {tables.symbols['%']}"
    m = _CURRENCY_RE.match(core)
    if m:
        return f"{_cardinal(m.group(2), tables)} {tables.symbols[m.group(1)]}"
    m = _SECTION_RE.match(core)
    if m:
        return f"{tables.symbols['§']} {_cardinal(m.group(1), tables)}"
    if core in tables.symbols:
        return tables.symbols[core]
    if any(ch.isdigit() or ch in tables.symbols for ch in core):
        raise UnmappableToken(f"token {core!r} mixes digits or symbols beyond the rules")
    return None


def normalise(rt: str, tables: NormalisationTables) -> str:
    """Expand every digit, listed acronym and symbol token to words.

    Leading and trailing punctuation moves onto the expansion unchanged, so
    the punctuation mark count of the sentence is preserved.
    """
    out_tokens = []
    for token in rt.split(" "):
        if not token:
            continue
        head = ""
        tail = ""
        core = token
        while core and core[0] in _LEADING_MARKS:
            head += core[0]
            core = core[1:]
        while core and core[-1] in _TRAILING_MARKS:
            tail = core[-1] + tail
            core = core[:-1]
        expansion = _expand_core(core, tables) if core else None
        if expansion is None:
            out_tokens.append(token)
        else:
            expansion = _transfer_case(core, expansion)
            out_tokens.append(head + expansion + tail)
    return " ".join(out_tokens)
