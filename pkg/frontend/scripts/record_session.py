#!/usr/bin/env python3
"""Record a real curator session against the actual service.

Drives the FastAPI app through a scripted curation flow and freezes every
request/response pair (bodies, status codes, export bytes) into
tests/fixtures/recorded_session.json. The UI contract tests replay this
recording, so every number the UI is tested against came from the service.

Also runs the equivalent CLI export so the tests can assert
UI download == service bytes == CLI bytes.

Usage: python3 scripts/record_session.py
"""

import base64
import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from peakcut.cli import main as cli_main
from peakcut.service import create_app
from peakcut.sessions import serialize_sessions
from peakcut.synth import PlantedInterval, SynthConfig, generate_sessions

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "recorded_session.json"

AIR = 1_600_000_000.0
DURATION = 600.0


def build_inputs(workdir: Path) -> dict:
    cfg = SynthConfig(
        n_viewers=400,
        duration=DURATION,
        baseline_rewatch_p=0.02,
        planted=(PlantedInterval(300.0, 330.0, 0.35),),
        live_watch_p=0.9,
        rng_seed=42,
    )
    sessions, _ = generate_sessions(cfg, asset_id="demo", air_start=AIR)
    paths = {
        "sessions": workdir / "sessions.jsonl",
        "asset": workdir / "asset.json",
        "meta": workdir / "meta.json",
    }
    paths["sessions"].write_text(serialize_sessions(sessions))
    paths["asset"].write_text(
        json.dumps({"asset_id": "demo", "air_start": AIR, "duration": DURATION})
    )
    paths["meta"].write_text(
        json.dumps(
            {
                "shots": [float(b) for b in range(0, 601, 10)],
                "tags": [
                    {"label": "warren", "category": "actor", "start": 290.0, "end": 340.0,
                     "confidence": 0.9, "source": "vendor-a"},
                    {"label": "anger", "category": "emotion", "start": 100.0, "end": 120.0,
                     "confidence": 0.7, "source": "vendor-a"},
                ],
                "captions": [],
            }
        )
    )
    return paths


def main() -> None:
    exchanges = []
    workdir = Path(tempfile.mkdtemp(prefix="peakcut-record-"))
    paths = build_inputs(workdir)

    app = create_app(workdir / "data")
    client = TestClient(app)

    def record(method: str, path: str, body=None, expect=None):
        kwargs = {}
        if body is not None:
            kwargs["json"] = body
        resp = client.request(method, path, **kwargs)
        if expect is not None:
            assert resp.status_code == expect, (method, path, resp.status_code, resp.text)
        is_json = resp.headers.get("content-type", "").startswith("application/json")
        entry = {
            "method": method,
            "path": path,
            "body": body,
            "status": resp.status_code,
        }
        # Exports must be byte-exact, so those are stored base64 even if JSON.
        if path.startswith("/api/v1/assets/demo/export") or not is_json:
            entry["response_b64"] = base64.b64encode(resp.content).decode("ascii")
        else:
            entry["response_json"] = resp.json()
        exchanges.append(entry)
        return resp

    # setup (not part of the recorded curator flow)
    resp = client.post(
        "/api/v1/assets",
        json={
            "asset": {"asset_id": "demo", "air_start": AIR, "duration": DURATION},
            "sessions_path": str(paths["sessions"]),
            "metadata_path": str(paths["meta"]),
            "config": {"k": 2.5, "bin_s": 1.0, "window_s": 1.0},
        },
    )
    assert resp.status_code == 201, resp.text

    # 1-4: the console loads
    record("GET", "/api/v1/assets", expect=200)
    seg_doc = record("GET", "/api/v1/assets/demo/segments", expect=200).json()
    record("GET", "/api/v1/assets/demo/timeline?cohort=all", expect=200)
    record("GET", "/api/v1/assets/demo/tags", expect=200)
    assert seg_doc["revision"] == 1
    seg_id = seg_doc["segments"][0]["id"]

    # 5: curator widens the minimum clip length (rev 1 -> 2)
    record("PATCH", "/api/v1/assets/demo/config",
           body={"config": {"min_len": 20.0}, "revision": 1}, expect=200)

    # 6: a second tab accepts the first proposal (rev 2 -> 3)
    record("POST", f"/api/v1/assets/demo/segments/{seg_id}/status",
           body={"action": "accept", "revision": 2}, expect=200)

    # 7-9: the first tab, still on rev 2, lowers k; gets 409, reloads, replays
    record("PATCH", "/api/v1/assets/demo/config",
           body={"config": {"k": 2.0}, "revision": 2}, expect=409)
    record("GET", "/api/v1/assets/demo/segments", expect=200)
    record("PATCH", "/api/v1/assets/demo/config",
           body={"config": {"k": 2.0}, "revision": 3}, expect=200)

    # 10-11: export both formats at the final config
    record("POST", "/api/v1/assets/demo/export?format=json", expect=200)
    record("POST", "/api/v1/assets/demo/export?format=concat_txt", expect=200)

    # 12-13: cohort overlay series
    record("GET", "/api/v1/assets/demo/timeline?cohort=early", expect=200)
    record("GET", "/api/v1/assets/demo/timeline?cohort=late", expect=200)

    # Equivalent CLI run for the parity assertion (same config as rev 4).
    reel = workdir / "reel.json"
    code = cli_main(
        [
            "v1",
            "--sessions", str(paths["sessions"]),
            "--asset", str(paths["asset"]),
            "--meta", str(paths["meta"]),
            "--k", "2.0", "--min-len", "20", "--bin", "1", "--window", "1",
            "--out", str(reel),
        ]
    )
    assert code == 0
    cli_json = reel.read_bytes()
    cli_concat = (workdir / "reel.concat.txt").read_bytes()

    service_json = base64.b64decode(exchanges[-4]["response_b64"])
    assert service_json == cli_json, "service export must equal CLI export"

    doc = {
        "meta": {
            "asset_id": "demo",
            "duration": DURATION,
            "accepted_segment_id": seg_id,
            "note": "recorded from the live service by scripts/record_session.py",
        },
        "cli_export_b64": {
            "json": base64.b64encode(cli_json).decode("ascii"),
            "concat_txt": base64.b64encode(cli_concat).decode("ascii"),
        },
        "exchanges": exchanges,
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(doc, indent=1))
    print(f"recorded {len(exchanges)} exchanges -> {OUT}")


if __name__ == "__main__":
    main()
