"""Shared fixtures: a small deterministic population with an obvious peak."""

import json

import pytest

from peakcut.sessions import AssetInfo, serialize_sessions
from peakcut.synth import PlantedInterval, SynthConfig, generate_sessions

AIR = 1_600_000_000.0


@pytest.fixture(scope="session")
def demo_population():
    """600 s asset, one strong planted interval at [300, 330), deterministic."""
    cfg = SynthConfig(
        n_viewers=400,
        duration=600.0,
        baseline_rewatch_p=0.02,
        planted=(PlantedInterval(300.0, 330.0, 0.35),),
        live_watch_p=0.9,
        rng_seed=42,
    )
    sessions, truth = generate_sessions(cfg, asset_id="demo")
    asset = AssetInfo(asset_id="demo", air_start=AIR, duration=cfg.duration)
    return sessions, asset, truth


@pytest.fixture()
def demo_files(tmp_path, demo_population):
    """The demo population written out as the CLI/service input files."""
    sessions, asset, _ = demo_population
    paths = {
        "sessions": tmp_path / "sessions.jsonl",
        "asset": tmp_path / "asset.json",
        "meta": tmp_path / "meta.json",
        "events": tmp_path / "events.json",
    }
    paths["sessions"].write_text(serialize_sessions(sessions))
    paths["asset"].write_text(
        json.dumps({"asset_id": asset.asset_id, "air_start": asset.air_start, "duration": asset.duration})
    )
    shots = [float(b) for b in range(0, 601, 10)]
    tags = [
        {"label": "warren", "category": "actor", "start": 290.0, "end": 340.0, "confidence": 0.9, "source": "vendor-a"},
        {"label": "anger", "category": "emotion", "start": 100.0, "end": 120.0, "confidence": 0.7, "source": "vendor-a"},
    ]
    paths["meta"].write_text(json.dumps({"shots": shots, "tags": tags, "captions": []}))
    events = [
        {"start": float(s), "end": float(s + 60), "label": f"p{i}", "attributes": {}}
        for i, s in enumerate(range(0, 600, 60))
    ]
    paths["events"].write_text(json.dumps({"events": events}))
    return paths
