"""Job orchestration service: pipeline state machine, storage, HTTP API."""

from .models import (
    ConflictingRevision,
    EditOp,
    InvalidEdit,
    Job,
    NoEdits,
    NotFound,
    Segment,
    TranscriptDoc,
    UnsupportedFormat,
)
from .pipeline import PipelineService
from .storage import DocumentStore, StorageFailure

__all__ = [
    "ConflictingRevision",
    "DocumentStore",
    "EditOp",
    "InvalidEdit",
    "Job",
    "NoEdits",
    "NotFound",
    "PipelineService",
    "Segment",
    "StorageFailure",
    "TranscriptDoc",
    "UnsupportedFormat",
]
