// Wire types mirroring the service API.

export type JobState =
  | "uploaded"
  | "converting"
  | "detecting"
  | "diarising"
  | "recognising"
  | "restoring"
  | "done"
  | "failed";

export const PIPELINE_STAGES = [
  "converting",
  "detecting",
  "diarising",
  "recognising",
  "restoring",
] as const;

export type Stage = (typeof PIPELINE_STAGES)[number];

export interface ProgressEvent {
  stage: Stage | null;
  fraction: number;
  state: JobState;
}

export interface JobSnapshot {
  id: string;
  state: JobState;
  stage_progress: Record<Stage, number>;
  error: string | null;
  created_at: number;
  media_name: string;
}

export interface SegmentRow {
  seg_id: string;
  start_s: number;
  end_s: number;
  speaker_id: number;
  raw_text: string;
  rich_text: string;
}

export interface TranscriptDoc {
  revision: number;
  segments: SegmentRow[];
}

export type EditableField = "text" | "rich_text" | "start_s" | "end_s" | "speaker_id";

export type ExportFormat = "srt" | "txt" | "json";
