"""Job and transcript domain objects for the orchestration service."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Sequence

JOB_STATES = (
    "uploaded",
    "converting",
    "detecting",
    "diarising",
    "recognising",
    "restoring",
    "done",
    "failed",
)
PIPELINE_STAGES = ("converting", "detecting", "diarising", "recognising", "restoring")
TERMINAL_STATES = ("done", "failed")

EDITABLE_FIELDS = ("text", "rich_text", "start_s", "end_s", "speaker_id")


class NotFound(KeyError):
    """No such job or segment."""


class InvalidEdit(ValueError):
    """The edit would break the transcript invariants."""


class ConflictingRevision(RuntimeError):
    """The client edited against a stale revision."""


class UnsupportedFormat(ValueError):
    """Unknown export format."""


class NoEdits(RuntimeError):
    """The transcript has no human corrections to export."""


@dataclass
class Job:
    id: str
    state: str = "uploaded"
    stage_progress: dict[str, float] = field(
        default_factory=lambda: {stage: 0.0 for stage in PIPELINE_STAGES}
    )
    error: str | None = None
    created_at: float = 0.0
    media_name: str = ""

    def to_doc(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "state": self.state,
            "stage_progress": dict(self.stage_progress),
            "error": self.error,
            "created_at": self.created_at,
            "media_name": self.media_name,
        }

    @classmethod
    def from_doc(cls, doc: dict[str, Any]) -> "Job":
        return cls(
            id=doc["id"],
            state=doc["state"],
            stage_progress=dict(doc["stage_progress"]),
            error=doc.get("error"),
            created_at=doc.get("created_at", 0.0),
            media_name=doc.get("media_name", ""),
        )


@dataclass(frozen=True)
class Segment:
    seg_id: str
    start_s: float
    end_s: float
    speaker_id: int
    raw_text: str
    rich_text: str

    def __post_init__(self):
        if self.end_s <= self.start_s:
            raise InvalidEdit(f"segment {self.seg_id} has non-positive duration")
        if self.start_s < 0:
            raise InvalidEdit(f"segment {self.seg_id} starts before zero")
        if not isinstance(self.speaker_id, int) or self.speaker_id < 0:
            raise InvalidEdit(f"segment {self.seg_id} has invalid speaker id")


@dataclass(frozen=True)
class TranscriptDoc:
    segments: tuple[Segment, ...]
    revision: int = 0

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        prev_end = 0.0
        for seg in self.segments:
            if seg.start_s < prev_end:
                raise InvalidEdit(f"segment {seg.seg_id} overlaps its predecessor")
            prev_end = seg.end_s

    def to_doc(self) -> dict[str, Any]:
        return {
            "revision": self.revision,
            "segments": [
                {
                    "seg_id": s.seg_id,
                    "start_s": s.start_s,
                    "end_s": s.end_s,
                    "speaker_id": s.speaker_id,
                    "raw_text": s.raw_text,
                    "rich_text": s.rich_text,
                }
                for s in self.segments
            ],
        }

    @classmethod
    def from_doc(cls, doc: dict[str, Any]) -> "TranscriptDoc":
        return cls(
            segments=tuple(
                Segment(
                    s["seg_id"],
                    float(s["start_s"]),
                    float(s["end_s"]),
                    int(s["speaker_id"]),
                    s["raw_text"],
                    s["rich_text"],
                )
                for s in doc["segments"]
            ),
            revision=int(doc["revision"]),
        )


@dataclass(frozen=True)
class EditOp:
    seg_id: str
    field: str
    value: Any

    def __post_init__(self):
        if self.field not in EDITABLE_FIELDS:
            raise InvalidEdit(f"field must be one of {EDITABLE_FIELDS}, got {self.field!r}")


def apply_edit(doc: TranscriptDoc, op: EditOp) -> TranscriptDoc:
    """New TranscriptDoc with the edit applied and revision bumped.

    Raises NotFound for an unknown segment and InvalidEdit when the change
    would break ordering, disjointness or field typing.
    """
    index = next((i for i, s in enumerate(doc.segments) if s.seg_id == op.seg_id), None)
    if index is None:
        raise NotFound(f"no segment {op.seg_id!r}")
    seg = doc.segments[index]
    if op.field == "text":
        seg = replace(seg, raw_text=_require_str(op))
    elif op.field == "rich_text":
        seg = replace(seg, rich_text=_require_str(op))
    elif op.field == "speaker_id":
        seg = replace(seg, speaker_id=_require_int(op))
    else:
        seg = replace(seg, **{op.field: _require_number(op)})

    segments = list(doc.segments)
    segments[index] = seg
    segments.sort(key=lambda s: s.start_s)
    return TranscriptDoc(tuple(segments), doc.revision + 1)


def _require_str(op: EditOp) -> str:
    if not isinstance(op.value, str):
        raise InvalidEdit(f"{op.field} expects a string")
    return op.value


def _require_int(op: EditOp) -> int:
    if isinstance(op.value, bool) or not isinstance(op.value, int):
        raise InvalidEdit(f"{op.field} expects an integer")
    return op.value


def _require_number(op: EditOp) -> float:
    if isinstance(op.value, bool) or not isinstance(op.value, (int, float)):
        raise InvalidEdit(f"{op.field} expects a number")
    return float(op.value)


def validate_states(sequence: Sequence[str]) -> None:
    """Check that a state sequence walks the pipeline in order.

    Every transition must step to the next pipeline state or to failed;
    nothing moves backwards and nothing is skipped.
    """
    order = {state: i for i, state in enumerate(JOB_STATES[:-1])}
    prev: str | None = None
    for state in sequence:
        if state == "failed":
            if prev in TERMINAL_STATES:
                raise ValueError("failed after a terminal state")
            prev = state
            continue
        if prev == state:
            continue
        if prev in ("failed", "done"):
            raise ValueError(f"transition out of terminal state {prev}")
        if prev is None:
            if state != "uploaded":
                raise ValueError(f"run must start at uploaded, got {state}")
        elif order[state] != order[prev] + 1:
            raise ValueError(f"stage skip or reversal: {prev} -> {state}")
        prev = state
