import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { rowsBySpeaker, speakerColor, submitEdit, validateEdit } from "../src/editor.js";
import { emitFrames } from "../src/api.js";
import type { ProgressEvent, TranscriptDoc } from "../src/types.js";

const doc: TranscriptDoc = {
  revision: 3,
  segments: [
    { seg_id: "s0", start_s: 0.0, end_s: 2.0, speaker_id: 0, raw_text: "a", rich_text: "A." },
    { seg_id: "s1", start_s: 3.0, end_s: 5.0, speaker_id: 1, raw_text: "b", rich_text: "B." },
  ],
};

describe("validateEdit", () => {
  it("accepts a retime into free space", () => {
    expect(validateEdit(doc, { segId: "s0", field: "end_s", value: 2.5 })).toBeNull();
  });

  it("blocks overlaps client-side", () => {
    expect(validateEdit(doc, { segId: "s0", field: "end_s", value: 3.5 })).toMatch(/overlaps/);
  });

  it("blocks negative durations", () => {
    expect(validateEdit(doc, { segId: "s1", field: "end_s", value: 2.9 })).toMatch(/after start/);
  });

  it("blocks unknown segments and bad speakers", () => {
    expect(validateEdit(doc, { segId: "zz", field: "text", value: "x" })).toMatch(/unknown/);
    expect(validateEdit(doc, { segId: "s0", field: "speaker_id", value: -2 })).toMatch(/speaker/);
  });
});

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

describe("submitEdit", () => {
  it("returns the updated document on success", async () => {
    const updated = { ...doc, revision: 4 };
    const api = new ApiClient("http://x", (async () => jsonResponse(200, updated)) as typeof fetch);
    const outcome = await submitEdit(api, "j1", doc, { segId: "s0", field: "text", value: "x" });
    expect(outcome).toEqual({ ok: true, doc: updated });
  });

  it("surfaces the revision-conflict path with the latest document", async () => {
    const latest = { ...doc, revision: 9 };
    let call = 0;
    const api = new ApiClient("http://x", (async () => {
      call += 1;
      return call === 1
        ? jsonResponse(409, { detail: "expected revision 3, transcript is at 9" })
        : jsonResponse(200, latest);
    }) as typeof fetch);
    const outcome = await submitEdit(api, "j1", doc, { segId: "s0", field: "text", value: "x" });
    expect(outcome).toEqual({ ok: false, kind: "conflict", latest });
  });

  it("never sends an edit that fails local validation", async () => {
    const api = new ApiClient("http://x", (async () => {
      throw new Error("must not be called");
    }) as typeof fetch);
    const outcome = await submitEdit(api, "j1", doc, { segId: "s0", field: "end_s", value: 4.0 });
    expect(outcome.ok).toBe(false);
    if (!outcome.ok) expect(outcome.kind).toBe("invalid");
  });
});

describe("presentation helpers", () => {
  it("groups rows by speaker with stable colours", () => {
    const groups = rowsBySpeaker(doc);
    expect([...groups.keys()]).toEqual([0, 1]);
    expect(speakerColor(0)).toBe(speakerColor(0));
    expect(speakerColor(0)).not.toBe(speakerColor(1));
  });
});

describe("SSE frame parser", () => {
  it("handles frames split across chunks", () => {
    const events: ProgressEvent[] = [];
    const push = (e: ProgressEvent) => events.push(e);
    let tail = emitFrames('data: {"stage":null,"fraction":0,"state":"uploaded"}\n\ndata: {"sta', push);
    tail = emitFrames(tail + 'ge":"converting","fraction":1.0,"state":"converting"}\n\n', push);
    expect(tail).toBe("");
    expect(events.map((e) => e.state)).toEqual(["uploaded", "converting"]);
  });
});
