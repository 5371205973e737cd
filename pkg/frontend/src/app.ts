// Dashboard wiring: upload a file, watch per-stage progress, then edit and
// export the finished transcript. All DOM construction lives here; the
// modules it drives are plain logic and separately testable.

import { ApiClient } from "./api.js";
import { submitEdit, speakerColor, type EditRequest } from "./editor.js";
import { downloadName, formatClock, percent } from "./format.js";
import { watchJob, type JobView } from "./state.js";
import { PIPELINE_STAGES, type ExportFormat, type TranscriptDoc } from "./types.js";

const STAGE_LABELS: Record<string, string> = {
  converting: "Converting audio",
  detecting: "Finding speech",
  diarising: "Labelling speakers",
  recognising: "Recognising",
  restoring: "Restoring punctuation",
};

export class Dashboard {
  private jobId: string | null = null;
  private doc: TranscriptDoc | null = null;

  constructor(
    private api: ApiClient,
    private root: HTMLElement,
  ) {
    this.renderUpload();
  }

  private clear(): void {
    this.root.replaceChildren();
  }

  private renderUpload(): void {
    this.clear();
    const form = document.createElement("form");
    form.className = "upload-form";
    const input = document.createElement("input");
    input.type = "file";
    input.accept = ".wav,audio/wav";
    input.required = true;
    const button = document.createElement("button");
    button.type = "submit";
    button.textContent = "Upload and transcribe";
    const banner = document.createElement("p");
    banner.className = "banner";
    form.append(input, button, banner);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const file = input.files?.[0];
      if (!file) return;
      this.startJob(file).catch((error) => {
        banner.textContent = `Upload failed: ${error}`;
        banner.classList.add("error");
      });
    });
    this.root.append(form);
  }

  private async startJob(file: File): Promise<void> {
    this.jobId = await this.api.createJob(file, file.name);
    this.renderProgressShell();
    const finalView = await watchJob(this.api, this.jobId, (view) => this.renderProgress(view));
    if (finalView.state === "done") {
      this.doc = await this.api.getTranscript(this.jobId);
      this.renderEditor();
    }
  }

  private renderProgressShell(): void {
    this.clear();
    const list = document.createElement("div");
    list.className = "stages";
    for (const stage of PIPELINE_STAGES) {
      const row = document.createElement("div");
      row.className = "stage-row";
      row.dataset.stage = stage;
      const label = document.createElement("span");
      label.textContent = STAGE_LABELS[stage] ?? stage;
      const bar = document.createElement("progress");
      bar.max = 1;
      bar.value = 0;
      const value = document.createElement("span");
      value.className = "value";
      value.textContent = "0%";
      row.append(label, bar, value);
      list.append(row);
    }
    const banner = document.createElement("p");
    banner.className = "banner";
    this.root.append(list, banner);
  }

  renderProgress(view: JobView): void {
    for (const stage of PIPELINE_STAGES) {
      const row = this.root.querySelector<HTMLElement>(`[data-stage="${stage}"]`);
      if (!row) continue;
      const bar = row.querySelector("progress")!;
      const value = row.querySelector(".value")!;
      bar.value = view.fractions[stage];
      value.textContent = percent(view.fractions[stage]);
    }
    const banner = this.root.querySelector(".banner");
    if (banner && view.state === "failed") {
      banner.textContent = `Transcription failed during ${view.failedStage ?? "processing"}`;
      banner.classList.add("error");
    }
  }

  private renderEditor(): void {
    if (!this.doc || !this.jobId) return;
    this.clear();
    const table = document.createElement("table");
    table.className = "editor";
    const head = document.createElement("tr");
    for (const column of ["Start", "End", "Speaker", "Text"]) {
      const th = document.createElement("th");
      th.textContent = column;
      head.append(th);
    }
    table.append(head);
    for (const segment of this.doc.segments) {
      const row = document.createElement("tr");
      row.dataset.segId = segment.seg_id;
      row.style.borderLeftColor = speakerColor(segment.speaker_id);
      row.append(
        this.cell(segment.seg_id, "start_s", formatClock(segment.start_s), segment.start_s),
        this.cell(segment.seg_id, "end_s", formatClock(segment.end_s), segment.end_s),
        this.cell(segment.seg_id, "speaker_id", String(segment.speaker_id), segment.speaker_id),
        this.cell(segment.seg_id, "rich_text", segment.rich_text, segment.rich_text),
      );
      table.append(row);
    }

    const exports = document.createElement("div");
    exports.className = "exports";
    for (const format of ["srt", "txt", "json"] as ExportFormat[]) {
      const link = document.createElement("a");
      link.href = this.api.exportUrl(this.jobId, format);
      link.download = downloadName(this.jobId, format);
      link.textContent = `Download .${format}`;
      exports.append(link);
    }
    const banner = document.createElement("p");
    banner.className = "banner";
    this.root.append(table, exports, banner);
  }

  /** Editable cell; commits on change and surfaces validation inline. */
  private cell(
    segId: string,
    field: EditRequest["field"],
    display: string,
    raw: string | number,
  ): HTMLTableCellElement {
    const td = document.createElement("td");
    const input = document.createElement("input");
    input.value = field === "start_s" || field === "end_s" ? String(raw) : display;
    input.dataset.field = field;
    input.addEventListener("change", () => {
      const value =
        field === "rich_text" || field === "text" ? input.value : Number(input.value);
      void this.commitEdit({ segId, field, value });
    });
    td.append(input);
    return td;
  }

  async commitEdit(edit: EditRequest): Promise<void> {
    if (!this.doc || !this.jobId) return;
    const outcome = await submitEdit(this.api, this.jobId, this.doc, edit);
    const banner = this.root.querySelector(".banner");
    if (outcome.ok) {
      this.doc = outcome.doc;
      if (banner) banner.textContent = "";
      this.renderEditor();
    } else if (outcome.kind === "conflict") {
      this.doc = outcome.latest;
      this.renderEditor();
      const note = this.root.querySelector(".banner");
      if (note) {
        note.textContent = "Someone else edited this transcript; showing the latest version. Reapply your change.";
        note.classList.add("warning");
      }
    } else if (banner) {
      banner.textContent = outcome.message;
      banner.classList.add("error");
    }
  }
}

export function mount(baseUrl: string, root: HTMLElement): Dashboard {
  return new Dashboard(new ApiClient(baseUrl), root);
}
