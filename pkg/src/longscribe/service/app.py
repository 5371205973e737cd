"""HTTP API over the pipeline service.

    POST  /jobs                          multipart upload -> {"id": ...}
    GET   /jobs/{id}                     job snapshot
    GET   /jobs/{id}/events              text/event-stream of progress JSON
    GET   /jobs/{id}/transcript          transcript document
    PATCH /jobs/{id}/segments/{seg_id}   edit with optimistic revision check
    GET   /jobs/{id}/export?format=srt|txt|json
    GET   /jobs/{id}/corrections         corrected-segment manifest (JSONL)
"""

from __future__ import annotations

import json

from fastapi import FastAPI, HTTPException, Request, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import Response, StreamingResponse

from ..errors import EngineUnavailable, ProtocolViolation
from .exports import CONTENT_TYPES
from .models import (
    ConflictingRevision,
    EditOp,
    InvalidEdit,
    NoEdits,
    NotFound,
    UnsupportedFormat,
)
from .pipeline import PipelineService


def create_app(service: PipelineService) -> FastAPI:
    app = FastAPI(title="longscribe", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.service = service

    @app.post("/jobs")
    async def create_job(file: UploadFile):
        data = await file.read()
        if not data:
            raise HTTPException(400, "empty upload")
        job_id = service.create_job(data, media_name=file.filename or "upload.wav")
        return {"id": job_id}

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str):
        try:
            return service.get_job(job_id).to_doc()
        except NotFound as exc:
            raise HTTPException(404, str(exc)) from exc

    @app.get("/jobs/{job_id}/events")
    def stream_events(job_id: str):
        try:
            service.get_job(job_id)
        except NotFound as exc:
            raise HTTPException(404, str(exc)) from exc

        def sse():
            for event in service.stream_progress(job_id):
                yield f"data: {json.dumps(event)}\n\n"

        return StreamingResponse(sse(), media_type="text/event-stream")

    @app.get("/jobs/{job_id}/transcript")
    def get_transcript(job_id: str):
        try:
            return service.get_transcript(job_id).to_doc()
        except NotFound as exc:
            raise HTTPException(404, str(exc)) from exc

    @app.patch("/jobs/{job_id}/segments/{seg_id}")
    async def edit_segment(job_id: str, seg_id: str, request: Request):
        body = await request.json()
        try:
            op = EditOp(seg_id=seg_id, field=body["field"], value=body["value"])
            doc = service.edit_segment(job_id, op, expected_revision=int(body["expected_revision"]))
        except NotFound as exc:
            raise HTTPException(404, str(exc)) from exc
        except KeyError as exc:
            raise HTTPException(400, f"missing field {exc}") from exc
        except ConflictingRevision as exc:
            raise HTTPException(409, str(exc)) from exc
        except InvalidEdit as exc:
            raise HTTPException(422, str(exc)) from exc
        return doc.to_doc()

    @app.get("/jobs/{job_id}/export")
    def export(job_id: str, format: str = "srt"):
        try:
            payload = service.export(job_id, format)
        except NotFound as exc:
            raise HTTPException(404, str(exc)) from exc
        except UnsupportedFormat as exc:
            raise HTTPException(400, str(exc)) from exc
        return Response(
            payload,
            media_type=CONTENT_TYPES[format],
            headers={"Content-Disposition": f'attachment; filename="transcript.{format}"'},
        )

    @app.get("/jobs/{job_id}/corrections")
    def corrections(job_id: str):
        try:
            manifest = service.export_corrections(job_id)
        except NotFound as exc:
            raise HTTPException(404, str(exc)) from exc
        except NoEdits as exc:
            raise HTTPException(400, str(exc)) from exc
        lines = "".join(
            json.dumps(
                {
                    "utt_id": rec.utt_id,
                    "audio_path": rec.audio_path,
                    "transcript": rec.transcript,
                    "weight": rec.weight,
                    "origin": rec.origin,
                },
                ensure_ascii=False,
            )
            + "\n"
            for rec in manifest.records
        )
        return Response(lines, media_type="application/jsonl")

    @app.exception_handler(EngineUnavailable)
    async def engine_unavailable(_request, exc):
        return Response(json.dumps({"detail": str(exc)}), status_code=503)

    @app.exception_handler(ProtocolViolation)
    async def protocol_violation(_request, exc):
        return Response(json.dumps({"detail": str(exc)}), status_code=502)

    return app
