// Job view state. Displayed fractions come only from server events; the
// store records them verbatim and never interpolates or invents progress.

import type { ApiClient } from "./api.js";
import type { JobState, ProgressEvent, Stage } from "./types.js";
import { PIPELINE_STAGES } from "./types.js";

export interface JobView {
  id: string;
  state: JobState;
  fractions: Record<Stage, number>;
  failedStage: Stage | null;
  receivedFractions: number[]; // audit trail of every fraction ever shown
}

export function newJobView(id: string): JobView {
  const fractions = Object.fromEntries(PIPELINE_STAGES.map((s) => [s, 0])) as Record<
    Stage,
    number
  >;
  return { id, state: "uploaded", fractions, failedStage: null, receivedFractions: [] };
}

export function applyEvent(view: JobView, event: ProgressEvent): JobView {
  const fractions = { ...view.fractions };
  if (event.stage !== null) {
    fractions[event.stage] = event.fraction;
  }
  let failedStage = view.failedStage;
  if (event.state === "failed" && failedStage === null) {
    failedStage = event.stage ?? lastActiveStage(view);
  }
  return {
    ...view,
    state: event.state,
    fractions,
    failedStage,
    receivedFractions: [...view.receivedFractions, event.fraction],
  };
}

function lastActiveStage(view: JobView): Stage | null {
  const started = PIPELINE_STAGES.filter((s) => view.fractions[s] > 0 || s === view.state);
  return started.length ? started[started.length - 1]! : (null as Stage | null);
}

export function isTerminal(state: JobState): boolean {
  return state === "done" || state === "failed";
}

export interface WatchOptions {
  retryDelayMs?: number;
  maxRetries?: number;
  sleep?: (ms: number) => Promise<void>;
}

const defaultSleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

/**
 * Follow a job's event stream to its terminal state. A dropped connection
 * resubscribes automatically; the server replays its snapshot, so the view
 * converges on the latest state after a reconnect.
 */
export async function watchJob(
  api: ApiClient,
  jobId: string,
  onView: (view: JobView) => void,
  options: WatchOptions = {},
): Promise<JobView> {
  const { retryDelayMs = 500, maxRetries = 20, sleep = defaultSleep } = options;
  let view = newJobView(jobId);
  let attempts = 0;
  for (;;) {
    try {
      await api.streamEvents(jobId, (event) => {
        view = applyEvent(view, event);
        onView(view);
      });
    } catch (error) {
      if (isTerminal(view.state)) return view;
      attempts += 1;
      if (attempts > maxRetries) throw error;
      await sleep(retryDelayMs);
      continue;
    }
    if (isTerminal(view.state)) return view;
    // Stream closed without a terminal state: resubscribe for the rest.
    attempts += 1;
    if (attempts > maxRetries) return view;
    await sleep(retryDelayMs);
  }
}
