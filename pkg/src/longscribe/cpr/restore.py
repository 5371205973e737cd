"""Restoration engines: turn plain lowercase input back into display text.

The production path is an external sequence restorer spoken to over a
line-oriented subprocess protocol (UTF-8 sentence in, restored sentence
out). A classifier-style fallback applies per-token labels from a pluggable
tagger. All engine output is validated against the cleaned-transcript form.
"""

from __future__ import annotations

import subprocess
from typing import Callable, Mapping, Protocol, Sequence

from ..errors import EngineUnavailable, ProtocolViolation
from .cleaning import validate_rich
from .labels import TokenLabel, apply_labels


class RestorerHandle(Protocol):
    def restore_line(self, line: str) -> str: ...


class IdentityRestorer:
    """Pass-through restorer; useful as a baseline and in tests."""

    def restore_line(self, line: str) -> str:
        return line


class MappingRestorer:
    """Canned input-to-output table with optional fallback."""

    def __init__(self, table: Mapping[str, str], fallback: RestorerHandle | None = None):
        self.table = dict(table)
        self.fallback = fallback or IdentityRestorer()

    def restore_line(self, line: str) -> str:
        if line in self.table:
            return self.table[line]
        return self.fallback.restore_line(line)


def _all_lower(tokens: Sequence[str]) -> list[TokenLabel]:
    return [TokenLabel("LOWER", "NONE") for _ in tokens]


class ClassifierRestorer:
    """Classifier-style fallback: tag each token, then apply the labels."""

    def __init__(self, tagger: Callable[[Sequence[str]], Sequence[TokenLabel]] = _all_lower):
        self.tagger = tagger

    def restore_line(self, line: str) -> str:
        tokens = line.split()
        labels = list(self.tagger(tokens))
        return apply_labels(tokens, labels)


class SubprocessRestorer:
    """One sentence per line over a subprocess; one run per call."""

    def __init__(self, command: tuple[str, ...], timeout_s: float = 60.0):
        self.command = tuple(command)
        self.timeout_s = timeout_s

    def restore_line(self, line: str) -> str:
        try:
            proc = subprocess.run(
                list(self.command),
                input=(line + "\n").encode("utf-8"),
                capture_output=True,
                timeout=self.timeout_s,
            )
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise EngineUnavailable(f"restorer failed to run: {exc}") from exc
        if proc.returncode != 0:
            raise EngineUnavailable(f"restorer exited with status {proc.returncode}")
        return proc.stdout.decode("utf-8").split("\n")[0]


def restore(in_text: str, engine: RestorerHandle) -> str:
    """Restore one plain sentence and validate the engine's output."""
    out = engine.restore_line(in_text)
    if in_text.strip() and not out.strip():
        raise ProtocolViolation("restorer returned an empty line for non-empty input")
    try:
        validate_rich(out)
    except ValueError as exc:
        raise ProtocolViolation(f"restorer output is not a clean transcript: {exc}") from exc
    return out
