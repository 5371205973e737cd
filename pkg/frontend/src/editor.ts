// Segment editing: client-side validation mirrors the server's invariants
// (the server still re-checks), and revision conflicts surface as a
// refetch-and-reapply prompt rather than silent overwrites.

import { ApiClient, ApiError } from "./api.js";
import type { EditableField, SegmentRow, TranscriptDoc } from "./types.js";

export interface EditRequest {
  segId: string;
  field: EditableField;
  value: string | number;
}

export type EditOutcome =
  | { ok: true; doc: TranscriptDoc }
  | { ok: false; kind: "invalid"; message: string }
  | { ok: false; kind: "conflict"; latest: TranscriptDoc }
  | { ok: false; kind: "error"; message: string };

/** Check an edit against the transcript invariants before sending it. */
export function validateEdit(doc: TranscriptDoc, edit: EditRequest): string | null {
  const segment = doc.segments.find((s) => s.seg_id === edit.segId);
  if (!segment) return `unknown segment ${edit.segId}`;

  if (edit.field === "text" || edit.field === "rich_text") {
    return typeof edit.value === "string" ? null : "text fields need a string";
  }
  if (edit.field === "speaker_id") {
    const n = Number(edit.value);
    return Number.isInteger(n) && n >= 0 ? null : "speaker must be a non-negative integer";
  }

  const n = Number(edit.value);
  if (!Number.isFinite(n)) return "time must be a number";
  const start = edit.field === "start_s" ? n : segment.start_s;
  const end = edit.field === "end_s" ? n : segment.end_s;
  if (start < 0) return "start before zero";
  if (end <= start) return "end must come after start";
  for (const other of doc.segments) {
    if (other.seg_id === edit.segId) continue;
    if (start < other.end_s && other.start_s < end) {
      return `overlaps segment ${other.seg_id}`;
    }
  }
  return null;
}

/** Apply one edit through the API, classifying the failure modes. */
export async function submitEdit(
  api: ApiClient,
  jobId: string,
  doc: TranscriptDoc,
  edit: EditRequest,
): Promise<EditOutcome> {
  const problem = validateEdit(doc, edit);
  if (problem) return { ok: false, kind: "invalid", message: problem };
  try {
    const updated = await api.patchSegment(jobId, edit.segId, edit.field, edit.value, doc.revision);
    return { ok: true, doc: updated };
  } catch (error) {
    if (error instanceof ApiError && error.status === 409) {
      const latest = await api.getTranscript(jobId);
      return { ok: false, kind: "conflict", latest };
    }
    if (error instanceof ApiError && error.status === 422) {
      return { ok: false, kind: "invalid", message: error.detail };
    }
    return { ok: false, kind: "error", message: String(error) };
  }
}

/** Stable speaker colour used to group rows visually. */
export function speakerColor(speakerId: number): string {
  const palette = ["#2563eb", "#dc2626", "#059669", "#d97706", "#7c3aed", "#0891b2"];
  return palette[speakerId % palette.length]!;
}

export function rowsBySpeaker(doc: TranscriptDoc): Map<number, SegmentRow[]> {
  const groups = new Map<number, SegmentRow[]>();
  for (const segment of doc.segments) {
    const rows = groups.get(segment.speaker_id) ?? [];
    rows.push(segment);
    groups.set(segment.speaker_id, rows);
  }
  return groups;
}
