"""Capitalisation and punctuation restoration.

Text moves through three states: a cleaned display-form transcript, its
normalised form with digits, acronyms and symbols expanded to pronounceable
words, and the plain lowercase input that mirrors raw recogniser output.
Per-token capitalisation and punctuation classes convert between the last
two states, covering initial-mutation casing where a lowercase particle
precedes the capital (second or third letter).
"""

from .cleaning import clean_corpus, validate_rich
from .labels import (
    CAP_CLASSES,
    PUNCT_CLASSES,
    IllegalClass,
    TokenLabel,
    apply_labels,
    extract_labels,
)
from .normalise import NormalisationTables, UnmappableToken, load_tables, normalise
from .restore import (
    ClassifierRestorer,
    IdentityRestorer,
    MappingRestorer,
    SubprocessRestorer,
    restore,
)
from .strip import strip_to_input, validate_plain

__all__ = [
    "CAP_CLASSES",
    "ClassifierRestorer",
    "IdentityRestorer",
    "IllegalClass",
    "MappingRestorer",
    "NormalisationTables",
    "PUNCT_CLASSES",
    "SubprocessRestorer",
    "TokenLabel",
    "UnmappableToken",
    "apply_labels",
    "clean_corpus",
    "extract_labels",
    "load_tables",
    "normalise",
    "restore",
    "strip_to_input",
    "validate_plain",
    "validate_rich",
]
