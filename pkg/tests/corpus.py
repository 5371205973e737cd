"""Deterministic fixture corpora for the text-chain and language model tests.

Two generators: alignable normalised sentences whose tokens survive the
label round trip byte-for-byte, and messy raw lines (brackets, digits,
acronyms, smart quotes) for exercising the cleaning chain.
"""

from __future__ import annotations

import random

LOWER_WORDS = [
    "agus", "dia", "duit", "ceart", "go", "raibh", "maith", "agat", "anseo",
    "ansin", "amach", "isteach", "scoil", "baile", "mór", "beag", "focal",
    "abhaile", "chonaic", "inniu", "amárach", "póca", "doras", "fuinneog",
    "leabhar", "múinteoir", "dalta", "ceol", "damhsa", "d'fhág", "sean-nós",
    "lá", "oíche", "sráid", "bord", "cathaoir", "fear", "bean", "páiste",
]

# Lowercase mutation prefixes preceding the word's original capital.
CAP2_WORDS = ["nGaeilge", "tSráid", "hÉireann", "gCarraig", "dTír", "bPoll", "mBád"]
CAP3_WORDS = ["bhFrainc", "bhFarraige", "bhFear", "bhFocal", "bhFuinneog"]
CAP1_WORDS = ["Éire", "Gaeilge", "Máire", "Seán", "Ciara", "Doire", "Gaillimh"]

END_MARKS = [".", ".", ".", "?", "!"]
MID_MARKS = [",", ",", ",", ";", ":"]

ACRONYMS = ["RTÉ", "TG4", "GAA", "BBC"]
SYMBOL_TOKENS = ["50%", "€5", "£20", "§7"]
JUNK = ["“maith”", "{duit}", "(anseo)", "[nóta]", "fear—mór", "café*"]


def make_nr_sentences(n: int, seed: int = 7) -> list[str]:
    """Normalised-rich sentences on which extract/apply round-trips exactly."""
    rng = random.Random(seed)
    sentences = []
    for _ in range(n):
        length = rng.randint(4, 11)
        tokens = []
        for position in range(length):
            roll = rng.random()
            if position == 0:
                word = rng.choice(CAP1_WORDS) if roll < 0.5 else rng.choice(LOWER_WORDS).capitalize()
            elif roll < 0.08:
                word = rng.choice(CAP1_WORDS)
            elif roll < 0.14:
                word = rng.choice(CAP2_WORDS)
            elif roll < 0.18:
                word = rng.choice(CAP3_WORDS)
            else:
                word = rng.choice(LOWER_WORDS)
            if position == length - 1:
                word += rng.choice(END_MARKS)
            elif rng.random() < 0.12:
                word += rng.choice(MID_MARKS)
            tokens.append(word)
        sentences.append(" ".join(tokens))
    return sentences


def make_raw_sentences(n: int, seed: int = 11) -> list[str]:
    """Messy lines for the clean -> normalise -> strip chain."""
    rng = random.Random(seed)
    lines = []
    for base in make_nr_sentences(n, seed=seed + 1):
        tokens = base.split()
        extra = []
        if rng.random() < 0.5:
            extra.append(str(rng.randint(0, 100)))
        if rng.random() < 0.3:
            extra.append(rng.choice(ACRONYMS))
        if rng.random() < 0.25:
            extra.append(rng.choice(SYMBOL_TOKENS))
        if rng.random() < 0.4:
            extra.append(rng.choice(JUNK))
        for token in extra:
            tokens.insert(rng.randrange(max(1, len(tokens) - 1)), token)
        lines.append(" ".join(tokens))
    return lines
