"""Job orchestration: the transcription pipeline as a persisted state machine.

Each job walks uploaded -> converting -> detecting -> diarising ->
recognising -> restoring -> done, with failed reachable from any
non-terminal state. Stage progress is persisted through the document store
and fanned out to any number of event-stream subscribers. Multiple jobs may
run concurrently; one job's stages are sequential.
"""

from __future__ import annotations

import queue
import threading
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterator

from .. import diarise as diarise_mod
from ..asr_engine import Engine, MockAsrEngine, recognise
from ..cpr.restore import IdentityRestorer, RestorerHandle, restore
from ..media import CANONICAL_RATE, AudioBuffer, decode_wav, encode_wav, resample
from ..ssl_tools.manifest import ManifestRecord, TrainingManifest
from ..vad import DetectorHandle, SpeechSegment, VadConfig, detect_speech, detect_speech_external
from .models import (
    EditOp,
    Job,
    NoEdits,
    NotFound,
    PIPELINE_STAGES,
    ConflictingRevision,
    Segment,
    TranscriptDoc,
    apply_edit,
)
from .storage import DocumentStore

PERSIST_MIN_INTERVAL_S = 0.1


class PipelineService:
    """Owns storage, engines and worker threads for pipeline jobs."""

    def __init__(
        self,
        store: DocumentStore,
        asr: Engine | None = None,
        restorer: RestorerHandle | None = None,
        detector: DetectorHandle | Callable[[AudioBuffer], list[SpeechSegment]] | None = None,
        vad_cfg: VadConfig = VadConfig(),
        cluster_cfg: diarise_mod.ClusterConfig = diarise_mod.ClusterConfig(),
        merge_gap_s: float = 1.0,
        merge_max_len_s: float = 30.0,
        workers: int = 2,
        autostart: bool = True,
    ):
        self.store = store
        self.asr = asr if asr is not None else MockAsrEngine()
        self.restorer = restorer if restorer is not None else IdentityRestorer()
        self.detector = detector
        self.vad_cfg = vad_cfg
        self.cluster_cfg = cluster_cfg
        self.merge_gap_s = merge_gap_s
        self.merge_max_len_s = merge_max_len_s
        self.autostart = autostart
        self._pool = ThreadPoolExecutor(max_workers=workers)
        self._lock = threading.RLock()
        self._events: dict[str, list[dict]] = {}
        self._subscribers: dict[str, list[queue.SimpleQueue]] = {}
        self._last_persist: dict[str, float] = {}

    # ------------------------------------------------------------------ jobs

    def create_job(self, upload: bytes, media_name: str = "upload.wav") -> str:
        """Persist the upload, create a job in state uploaded, schedule it."""
        if not upload:
            raise ValueError("rejecting empty upload")
        job_id = uuid.uuid4().hex[:12]
        self.store.put_blob(f"{job_id}.upload", upload)
        job = Job(id=job_id, created_at=time.time(), media_name=media_name)
        self._persist_job(job)
        self._publish(job, stage=None, fraction=0.0)
        if self.autostart:
            self._pool.submit(self._run_guarded, job_id)
        return job_id

    def _run_guarded(self, job_id: str) -> None:
        try:
            self.run_pipeline(job_id)
        except Exception:  # noqa: BLE001 - failures land on the job record
            pass

    def run_pipeline(self, job_id: str) -> Job:
        """Execute every stage in order; returns the terminal job."""
        job = self._load_job(job_id)
        if job.state != "uploaded":
            raise ValueError(f"job {job_id} is in state {job.state}, not uploaded")
        try:
            buf = self._stage_convert(job)
            speech = self._stage_detect(job, buf)
            turns = self._stage_diarise(job, buf, speech)
            raw_texts = self._stage_recognise(job, buf, turns)
            doc = self._stage_restore(job, turns, raw_texts)
            self.store.put("transcripts", job.id, doc.to_doc())
            self._advance(job, "done")
        except Exception as exc:  # noqa: BLE001 - any stage error fails the job
            job.error = f"{job.state}: {exc}"
            self._advance(job, "failed")
        return job

    # ---------------------------------------------------------------- stages

    def _stage_convert(self, job: Job) -> AudioBuffer:
        self._advance(job, "converting")
        raw = self.store.get_blob(f"{job.id}.upload")
        buf = decode_wav(raw)
        self._progress(job, "converting", 0.5)
        buf = resample(buf, CANONICAL_RATE)
        self.store.put_blob(f"{job.id}.wav", encode_wav(buf))
        self._progress(job, "converting", 1.0, force=True)
        return buf

    def _stage_detect(self, job: Job, buf: AudioBuffer) -> list[SpeechSegment]:
        self._advance(job, "detecting")
        if self.detector is None:
            speech = detect_speech(buf, self.vad_cfg)
        elif isinstance(self.detector, DetectorHandle):
            speech = detect_speech_external(buf, self.detector)
        else:
            speech = self.detector(buf)
        self._progress(job, "detecting", 1.0, force=True)
        return speech

    def _stage_diarise(
        self, job: Job, buf: AudioBuffer, speech: list[SpeechSegment]
    ) -> list[diarise_mod.DiarisedSegment]:
        self._advance(job, "diarising")
        if not speech:
            self._progress(job, "diarising", 1.0, force=True)
            return []
        embeddings = []
        for i, seg in enumerate(speech):
            embeddings.append(diarise_mod.embed_segment(buf, seg))
            self._progress(job, "diarising", (i + 1) / (len(speech) + 1))
        labels = diarise_mod.cluster(embeddings, self.cluster_cfg)
        turns = [diarise_mod.DiarisedSegment(seg, label) for seg, label in zip(speech, labels)]
        turns = diarise_mod.merge_adjacent(turns, self.merge_gap_s, self.merge_max_len_s)
        self._progress(job, "diarising", 1.0, force=True)
        return turns

    def _stage_recognise(
        self, job: Job, buf: AudioBuffer, turns: list[diarise_mod.DiarisedSegment]
    ) -> list[str]:
        self._advance(job, "recognising")
        texts = []
        for i, turn in enumerate(turns):
            texts.append(recognise(buf, turn.segment, self.asr).text)
            self._progress(job, "recognising", (i + 1) / len(turns))
        self._progress(job, "recognising", 1.0, force=True)
        return texts

    def _stage_restore(
        self, job: Job, turns: list[diarise_mod.DiarisedSegment], raw_texts: list[str]
    ) -> TranscriptDoc:
        self._advance(job, "restoring")
        segments = []
        for i, (turn, raw) in enumerate(zip(turns, raw_texts)):
            rich = restore(raw, self.restorer)
            segments.append(
                Segment(
                    seg_id=f"s{i}",
                    start_s=turn.segment.start_s,
                    end_s=turn.segment.end_s,
                    speaker_id=turn.speaker_id,
                    raw_text=raw,
                    rich_text=rich,
                )
            )
            self._progress(job, "restoring", (i + 1) / len(raw_texts))
        self._progress(job, "restoring", 1.0, force=True)
        return TranscriptDoc(tuple(segments), revision=0)

    # ------------------------------------------------------------- plumbing

    def _load_job(self, job_id: str) -> Job:
        doc = self.store.get("jobs", job_id)
        if doc is None:
            raise NotFound(f"no job {job_id!r}")
        return Job.from_doc(doc)

    def _persist_job(self, job: Job) -> None:
        self.store.put("jobs", job.id, job.to_doc())
        self._last_persist[job.id] = time.monotonic()

    def _advance(self, job: Job, state: str) -> None:
        job.state = state
        self._persist_job(job)
        stage = state if state in PIPELINE_STAGES else None
        fraction = job.stage_progress.get(stage, 0.0) if stage else (0.0 if state == "uploaded" else 1.0)
        self._publish(job, stage=stage, fraction=fraction)

    def _progress(self, job: Job, stage: str, fraction: float, force: bool = False) -> None:
        fraction = max(job.stage_progress.get(stage, 0.0), min(1.0, fraction))
        job.stage_progress[stage] = fraction
        now = time.monotonic()
        if force or now - self._last_persist.get(job.id, 0.0) >= PERSIST_MIN_INTERVAL_S:
            self._persist_job(job)
        self._publish(job, stage=stage, fraction=fraction)

    def _publish(self, job: Job, stage: str | None, fraction: float) -> None:
        event = {"stage": stage, "fraction": fraction, "state": job.state}
        with self._lock:
            self._events.setdefault(job.id, []).append(event)
            for q in self._subscribers.get(job.id, []):
                q.put(event)

    # ---------------------------------------------------------------- reads

    def get_job(self, job_id: str) -> Job:
        return self._load_job(job_id)

    def get_transcript(self, job_id: str) -> TranscriptDoc:
        self._load_job(job_id)  # NotFound if the job is unknown
        doc = self.store.get("transcripts", job_id)
        if doc is None:
            raise NotFound(f"job {job_id!r} has no transcript yet")
        return TranscriptDoc.from_doc(doc)

    def event_log(self, job_id: str) -> list[dict]:
        with self._lock:
            return list(self._events.get(job_id, []))

    def stream_progress(self, job_id: str) -> Iterator[dict]:
        """Replay past events, then follow live ones until a terminal state."""
        job = self._load_job(job_id)
        q: queue.SimpleQueue = queue.SimpleQueue()
        with self._lock:
            history = list(self._events.get(job_id, []))
            if not history:
                # Restarted service: synthesise a snapshot from the record.
                frac = 1.0 if job.state in ("done", "failed") else 0.0
                history = [{"stage": None, "fraction": frac, "state": job.state}]
            terminal_seen = any(ev["state"] in ("done", "failed") for ev in history)
            if not terminal_seen:
                self._subscribers.setdefault(job_id, []).append(q)
        try:
            yield from history
            if terminal_seen:
                return
            while True:
                event = q.get()
                yield event
                if event["state"] in ("done", "failed"):
                    return
        finally:
            with self._lock:
                subs = self._subscribers.get(job_id, [])
                if q in subs:
                    subs.remove(q)

    # ---------------------------------------------------------------- edits

    def edit_segment(self, job_id: str, op: EditOp, expected_revision: int) -> TranscriptDoc:
        with self._lock:
            job = self._load_job(job_id)
            if job.state != "done":
                raise ConflictingRevision(f"job {job_id} is {job.state}, not editable")
            doc = self.get_transcript(job_id)
            if doc.revision != expected_revision:
                raise ConflictingRevision(
                    f"expected revision {expected_revision}, transcript is at {doc.revision}"
                )
            new_doc = apply_edit(doc, op)
            self.store.put("transcripts", job_id, new_doc.to_doc())
            edits = self.store.get("corrections", job_id) or {"seg_ids": []}
            if op.seg_id not in edits["seg_ids"]:
                edits["seg_ids"].append(op.seg_id)
            self.store.put("corrections", job_id, edits)
            return new_doc

    def export(self, job_id: str, fmt: str) -> bytes:
        from .exports import export_bytes

        return export_bytes(self.get_transcript(job_id), fmt)

    def export_corrections(self, job_id: str) -> TrainingManifest:
        """Manifest of human-corrected segments for future training."""
        doc = self.get_transcript(job_id)
        edits = self.store.get("corrections", job_id)
        if not edits or not edits["seg_ids"]:
            raise NoEdits(f"job {job_id} has no corrected segments")
        edited = set(edits["seg_ids"])
        records = [
            ManifestRecord(
                utt_id=f"{job_id}:{seg.seg_id}",
                audio_path=f"blobs/{job_id}.wav#t={seg.start_s:.3f},{seg.end_s:.3f}",
                transcript=seg.raw_text,
                weight=1.0,
                origin="supervised",
            )
            for seg in doc.segments
            if seg.seg_id in edited
        ]
        return TrainingManifest(tuple(records))

    def close(self) -> None:
        self._pool.shutdown(wait=True)
        self.store.close()
