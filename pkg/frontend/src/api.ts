// HTTP client for the transcription service. Uses fetch throughout so the
// same code runs in the browser and under Node test runners; the event
// stream is parsed from the response body rather than relying on
// EventSource, which Node lacks.

import type {
  EditableField,
  ExportFormat,
  JobSnapshot,
  ProgressEvent,
  TranscriptDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function errorOf(response: Response): Promise<ApiError> {
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, detail);
}

export class ApiClient {
  constructor(
    public baseUrl: string,
    private fetchImpl: typeof fetch = fetch,
  ) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) throw await errorOf(response);
    return (await response.json()) as T;
  }

  async createJob(file: Blob, name: string): Promise<string> {
    const form = new FormData();
    form.append("file", file, name);
    const body = await this.json<{ id: string }>("/jobs", { method: "POST", body: form });
    return body.id;
  }

  getJob(jobId: string): Promise<JobSnapshot> {
    return this.json(`/jobs/${jobId}`);
  }

  getTranscript(jobId: string): Promise<TranscriptDoc> {
    return this.json(`/jobs/${jobId}/transcript`);
  }

  async patchSegment(
    jobId: string,
    segId: string,
    field: EditableField,
    value: string | number,
    expectedRevision: number,
  ): Promise<TranscriptDoc> {
    return this.json(`/jobs/${jobId}/segments/${segId}`, {
      method: "PATCH",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ field, value, expected_revision: expectedRevision }),
    });
  }

  exportUrl(jobId: string, format: ExportFormat): string {
    return `${this.baseUrl}/jobs/${jobId}/export?format=${format}`;
  }

  async fetchExport(jobId: string, format: ExportFormat): Promise<Blob> {
    const response = await this.fetchImpl(this.exportUrl(jobId, format));
    if (!response.ok) throw await errorOf(response);
    return response.blob();
  }

  async fetchCorrections(jobId: string): Promise<string> {
    const response = await this.fetchImpl(`${this.baseUrl}/jobs/${jobId}/corrections`);
    if (!response.ok) throw await errorOf(response);
    return response.text();
  }

  /**
   * Subscribe to the job's server-sent progress events. Resolves once the
   * stream ends (the server closes it after a terminal state). Rejects on
   * transport failure so callers can resubscribe.
   */
  async streamEvents(
    jobId: string,
    onEvent: (event: ProgressEvent) => void,
    signal?: AbortSignal,
  ): Promise<void> {
    const response = await this.fetchImpl(`${this.baseUrl}/jobs/${jobId}/events`, { signal });
    if (!response.ok) throw await errorOf(response);
    if (!response.body) throw new ApiError(0, "response has no body stream");
    const reader = response.body.getReader();
    const decoder = new TextDecoder();
    let buffer = "";
    for (;;) {
      const { done, value } = await reader.read();
      if (done) break;
      buffer += decoder.decode(value, { stream: true });
      buffer = emitFrames(buffer, onEvent);
    }
    emitFrames(buffer + "\n\n", onEvent);
  }
}

/** Parse complete `data: {...}\n\n` frames, returning the unconsumed tail. */
export function emitFrames(buffer: string, onEvent: (event: ProgressEvent) => void): string {
  for (;;) {
    const boundary = buffer.indexOf("\n\n");
    if (boundary < 0) return buffer;
    const frame = buffer.slice(0, boundary);
    buffer = buffer.slice(boundary + 2);
    for (const line of frame.split("\n")) {
      if (line.startsWith("data: ")) {
        onEvent(JSON.parse(line.slice(6)) as ProgressEvent);
      }
    }
  }
}
