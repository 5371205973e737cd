"""Transcript export formats: SRT, speaker-prefixed text, JSON."""

from __future__ import annotations

import json

from .models import TranscriptDoc, UnsupportedFormat

EXPORT_FORMATS = ("srt", "txt", "json")

CONTENT_TYPES = {
    "srt": "application/x-subrip",
    "txt": "text/plain; charset=utf-8",
    "json": "application/json",
}


def format_srt_timestamp(seconds: float) -> str:
    total_ms = int(round(seconds * 1000))
    ms = total_ms % 1000
    total_s = total_ms // 1000
    return f"{total_s // 3600:02d}:{total_s % 3600 // 60:02d}:{total_s % 60:02d},{ms:03d}"


def to_srt(doc: TranscriptDoc) -> str:
    """SRT blocks: index, `HH:MM:SS,mmm --> HH:MM:SS,mmm`, text, blank line.

    An empty transcript exports as an empty file.
    """
    blocks = []
    for i, seg in enumerate(doc.segments, start=1):
        blocks.append(
            f"{i}\n{format_srt_timestamp(seg.start_s)} --> {format_srt_timestamp(seg.end_s)}\n"
            f"{seg.rich_text}\n\n"
        )
    return "".join(blocks)


def to_txt(doc: TranscriptDoc) -> str:
    lines = [f"SPEAKER_{seg.speaker_id}: {seg.rich_text}" for seg in doc.segments]
    return "\n".join(lines) + ("\n" if lines else "")


def to_json(doc: TranscriptDoc) -> str:
    return json.dumps(doc.to_doc(), ensure_ascii=False, indent=2) + "\n"


def from_json(text: str) -> TranscriptDoc:
    return TranscriptDoc.from_doc(json.loads(text))


def export_bytes(doc: TranscriptDoc, fmt: str) -> bytes:
    if fmt == "srt":
        return to_srt(doc).encode("utf-8")
    if fmt == "txt":
        return to_txt(doc).encode("utf-8")
    if fmt == "json":
        return to_json(doc).encode("utf-8")
    raise UnsupportedFormat(f"format must be one of {EXPORT_FORMATS}, got {fmt!r}")
