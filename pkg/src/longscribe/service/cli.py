"""Serve the transcription API.

    longscribe-serve --host 127.0.0.1 --port 8080 --storage ./data \
        [--workers N] [--asr mock|cmd:<command>] [--restorer identity|cmd:<command>] \
        [--detector builtin|cmd:<command>] [--mock-table table.json]

Settings may also come from the environment: LONGSCRIBE_HOST, LONGSCRIBE_PORT,
LONGSCRIBE_STORAGE, LONGSCRIBE_WORKERS.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
from pathlib import Path

from ..asr_engine import MockAsrEngine, SubprocessAsrEngine
from ..cpr.restore import IdentityRestorer, SubprocessRestorer
from ..vad import DetectorHandle
from .app import create_app
from .pipeline import PipelineService
from .storage import DocumentStore


def build_service(args) -> PipelineService:
    if args.asr == "mock":
        table = {}
        if args.mock_table:
            table = json.loads(Path(args.mock_table).read_text(encoding="utf-8"))
        asr = MockAsrEngine(table)
    elif args.asr.startswith("cmd:"):
        asr = SubprocessAsrEngine(tuple(shlex.split(args.asr[4:])))
    else:
        raise SystemExit(f"unknown ASR engine spec {args.asr!r}")

    if args.restorer == "identity":
        restorer = IdentityRestorer()
    elif args.restorer.startswith("cmd:"):
        restorer = SubprocessRestorer(tuple(shlex.split(args.restorer[4:])))
    else:
        raise SystemExit(f"unknown restorer spec {args.restorer!r}")

    detector = None
    if args.detector != "builtin":
        if not args.detector.startswith("cmd:"):
            raise SystemExit(f"unknown detector spec {args.detector!r}")
        detector = DetectorHandle(tuple(shlex.split(args.detector[4:])))

    store = DocumentStore(args.storage)
    return PipelineService(store, asr=asr, restorer=restorer, detector=detector, workers=args.workers)


def build_parser() -> argparse.ArgumentParser:
    env = os.environ
    parser = argparse.ArgumentParser(prog="longscribe-serve", description=__doc__)
    parser.add_argument("--host", default=env.get("LONGSCRIBE_HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(env.get("LONGSCRIBE_PORT", "8080")))
    parser.add_argument("--storage", default=env.get("LONGSCRIBE_STORAGE", "./longscribe-data"))
    parser.add_argument("--workers", type=int, default=int(env.get("LONGSCRIBE_WORKERS", "2")))
    parser.add_argument("--asr", default="mock")
    parser.add_argument("--restorer", default="identity")
    parser.add_argument("--detector", default="builtin")
    parser.add_argument("--mock-table", default=None)
    return parser


def main(argv=None) -> int:
    import uvicorn

    args = build_parser().parse_args(argv)
    service = build_service(args)
    app = create_app(service)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    finally:
        service.close()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
