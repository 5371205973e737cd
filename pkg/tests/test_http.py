"""HTTP surface: upload, snapshots, SSE events, edits, exports, corrections."""

from __future__ import annotations

import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from longscribe.media import AudioBuffer, encode_wav
from longscribe.service import DocumentStore, PipelineService
from longscribe.service.app import create_app
from longscribe.service.models import validate_states

from e2e_fixture import build_mock_engine, build_wav


@pytest.fixture
def client(tmp_path):
    wav = build_wav()
    engine, _ = build_mock_engine(wav)
    service = PipelineService(DocumentStore(tmp_path / "store"), asr=engine, autostart=True)
    app = create_app(service)
    with TestClient(app) as test_client:
        test_client.fixture_wav = wav
        yield test_client
    service.close()


def upload(client, data: bytes, name: str = "fixture.wav") -> str:
    response = client.post("/jobs", files={"file": (name, data, "audio/wav")})
    assert response.status_code == 200
    return response.json()["id"]


def wait_done(client, job_id: str) -> dict:
    for _ in range(200):
        job = client.get(f"/jobs/{job_id}").json()
        if job["state"] in ("done", "failed"):
            return job
    raise AssertionError("job never reached a terminal state")


class TestJobs:
    def test_upload_and_complete(self, client):
        job_id = upload(client, client.fixture_wav)
        job = wait_done(client, job_id)
        assert job["state"] == "done"
        assert job["stage_progress"]["restoring"] == 1.0

    def test_empty_upload_rejected(self, client):
        response = client.post("/jobs", files={"file": ("empty.wav", b"", "audio/wav")})
        assert response.status_code == 400

    def test_unknown_job_404(self, client):
        assert client.get("/jobs/zzz").status_code == 404
        assert client.get("/jobs/zzz/transcript").status_code == 404
        assert client.get("/jobs/zzz/export?format=srt").status_code == 404
        assert client.get("/jobs/zzz/events").status_code == 404

    def test_corrupt_upload_fails_at_converting(self, client):
        job_id = upload(client, b"junk bytes")
        job = wait_done(client, job_id)
        assert job["state"] == "failed"
        assert job["error"].startswith("converting:")


class TestEvents:
    def test_stream_terminates_with_terminal_state(self, client):
        job_id = upload(client, client.fixture_wav)
        states = []
        with client.stream("GET", f"/jobs/{job_id}/events") as response:
            assert response.headers["content-type"].startswith("text/event-stream")
            for line in response.iter_lines():
                if line.startswith("data: "):
                    states.append(json.loads(line[6:])["state"])
        assert states[-1] == "done"
        validate_states(states)

    def test_completed_job_stream_replays_and_closes(self, client):
        job_id = upload(client, client.fixture_wav)
        wait_done(client, job_id)
        with client.stream("GET", f"/jobs/{job_id}/events") as response:
            lines = [line for line in response.iter_lines() if line.startswith("data: ")]
        assert json.loads(lines[-1][6:])["state"] == "done"


class TestTranscriptAndEdits:
    def test_get_transcript(self, client):
        job_id = upload(client, client.fixture_wav)
        wait_done(client, job_id)
        doc = client.get(f"/jobs/{job_id}/transcript").json()
        assert doc["revision"] == 0
        assert len(doc["segments"]) == 3

    def test_edit_flow_and_conflict(self, client):
        job_id = upload(client, client.fixture_wav)
        wait_done(client, job_id)
        doc = client.get(f"/jobs/{job_id}/transcript").json()
        seg_id = doc["segments"][0]["seg_id"]

        ok = client.patch(
            f"/jobs/{job_id}/segments/{seg_id}",
            json={"field": "rich_text", "value": "Dia duit, a chairde.", "expected_revision": 0},
        )
        assert ok.status_code == 200
        assert ok.json()["revision"] == 1

        stale = client.patch(
            f"/jobs/{job_id}/segments/{seg_id}",
            json={"field": "rich_text", "value": "eile", "expected_revision": 0},
        )
        assert stale.status_code == 409

    def test_invalid_edit_422(self, client):
        job_id = upload(client, client.fixture_wav)
        wait_done(client, job_id)
        doc = client.get(f"/jobs/{job_id}/transcript").json()
        first = doc["segments"][0]
        response = client.patch(
            f"/jobs/{job_id}/segments/{first['seg_id']}",
            json={"field": "end_s", "value": first["start_s"] - 1.0, "expected_revision": 0},
        )
        assert response.status_code == 422

    def test_unknown_segment_404(self, client):
        job_id = upload(client, client.fixture_wav)
        wait_done(client, job_id)
        response = client.patch(
            f"/jobs/{job_id}/segments/does-not-exist",
            json={"field": "text", "value": "x", "expected_revision": 0},
        )
        assert response.status_code == 404


class TestExportEndpoints:
    def test_srt_download(self, client):
        job_id = upload(client, client.fixture_wav)
        wait_done(client, job_id)
        response = client.get(f"/jobs/{job_id}/export?format=srt")
        assert response.status_code == 200
        assert response.headers["content-disposition"].endswith('.srt"')
        assert "-->" in response.text

    def test_json_round_trip(self, client):
        job_id = upload(client, client.fixture_wav)
        wait_done(client, job_id)
        exported = client.get(f"/jobs/{job_id}/export?format=json").json()
        direct = client.get(f"/jobs/{job_id}/transcript").json()
        assert exported == direct

    def test_bad_format_400(self, client):
        job_id = upload(client, client.fixture_wav)
        wait_done(client, job_id)
        assert client.get(f"/jobs/{job_id}/export?format=pdf").status_code == 400

    def test_corrections_flow(self, client):
        job_id = upload(client, client.fixture_wav)
        wait_done(client, job_id)
        assert client.get(f"/jobs/{job_id}/corrections").status_code == 400  # no edits yet
        doc = client.get(f"/jobs/{job_id}/transcript").json()
        client.patch(
            f"/jobs/{job_id}/segments/{doc['segments'][0]['seg_id']}",
            json={"field": "text", "value": "ceartúchán", "expected_revision": 0},
        )
        response = client.get(f"/jobs/{job_id}/corrections")
        assert response.status_code == 200
        records = [json.loads(line) for line in response.text.splitlines()]
        assert len(records) == 1
        assert records[0]["transcript"] == "ceartúchán"
        assert records[0]["origin"] == "supervised"


def test_silence_completes_with_empty_transcript(tmp_path):
    service = PipelineService(DocumentStore(tmp_path / "s"), autostart=True)
    app = create_app(service)
    with TestClient(app) as client:
        wav = encode_wav(AudioBuffer(np.zeros(16000), 16000))
        job_id = upload(client, wav, "silence.wav")
        job = wait_done(client, job_id)
        assert job["state"] == "done"
        assert client.get(f"/jobs/{job_id}/transcript").json()["segments"] == []
    service.close()
