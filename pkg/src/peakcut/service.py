"""Curation service: the JSON API behind the curator UI.

State is one JSON file per asset under the data dir (PEAKCUT_DATA_DIR);
mutations are guarded by an optimistic revision counter, so a stale curator
tab gets a 409 instead of silently clobbering newer work.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import Response
from pydantic import BaseModel

from .events import EventPartition
from .metadata import MetadataTrack
from .pipeline import (
    CurationConfig,
    build_reel,
    compute_timeline,
    run_curation,
    seed_key,
)
from .reel import export_cutlist
from .sessions import AssetInfo, parse_sessions


def default_data_dir() -> Path:
    return Path(os.environ.get("PEAKCUT_DATA_DIR", "peakcut-data"))


class RegisterAsset(BaseModel):
    asset: dict  # {"asset_id":..., "air_start":..., "duration":...}
    sessions_path: str
    metadata_path: str | None = None
    events_path: str | None = None
    format: str = "jsonl"
    config: dict | None = None


class ConfigPatch(BaseModel):
    config: dict
    revision: int


class StatusPost(BaseModel):
    action: Literal["accept", "reject", "trim", "clear"]
    revision: int
    start: float | None = None
    end: float | None = None


class CurationSession:
    """Server-side state for one asset: inputs, config, statuses, revision."""

    def __init__(self, asset: AssetInfo, reg: RegisterAsset, config: CurationConfig, revision: int = 1, statuses: dict | None = None):
        self.asset = asset
        self.reg = reg
        self.config = config
        self.revision = revision
        self.statuses: dict[str, dict] = statuses or {}
        self.lock = threading.Lock()
        self._sessions = None
        self._meta = None
        self._events = None

    def sessions(self):
        if self._sessions is None:
            text = Path(self.reg.sessions_path).read_text(encoding="utf-8")
            self._sessions = parse_sessions(text, self.reg.format).sessions
        return self._sessions

    def meta(self) -> MetadataTrack:
        if self._meta is None:
            if self.reg.metadata_path:
                self._meta = MetadataTrack.from_json(Path(self.reg.metadata_path).read_text(encoding="utf-8"))
            else:
                self._meta = MetadataTrack()
        return self._meta

    def events(self) -> EventPartition | None:
        if self._events is None and self.reg.events_path:
            self._events = EventPartition.from_json(Path(self.reg.events_path).read_text(encoding="utf-8"))
        return self._events

    def run(self):
        return run_curation(self.sessions(), self.asset, self.meta(), self.config, events=self.events())

    def proposal_rows(self) -> list[dict]:
        result = self.run()
        rows = []
        for prop, seed in zip(result.proposals, result.seed_of_proposal):
            key = seed_key(seed)
            status = self.statuses.get(key, {"status": "proposed"})
            rows.append(
                {
                    "id": key,
                    "seed": {"start": seed[0], "end": seed[1]},
                    "start": prop.start,
                    "end": prop.end,
                    "score": prop.score,
                    "source": prop.source,
                    "labels": sorted(prop.labels),
                    "status": status.get("status", "proposed"),
                    "trim": status.get("trim"),
                }
            )
        return rows

    def to_state(self) -> dict:
        return {
            "asset": {
                "asset_id": self.asset.asset_id,
                "air_start": self.asset.air_start,
                "duration": self.asset.duration,
            },
            "register": self.reg.model_dump(),
            "config": self.config.to_dict(),
            "statuses": self.statuses,
            "revision": self.revision,
        }

    @classmethod
    def from_state(cls, d: dict) -> "CurationSession":
        reg = RegisterAsset(**d["register"])
        asset = AssetInfo(**d["asset"])
        return cls(
            asset=asset,
            reg=reg,
            config=CurationConfig.from_dict(d["config"]),
            revision=d["revision"],
            statuses=d.get("statuses", {}),
        )


class Store:
    def __init__(self, data_dir: Path):
        self.data_dir = data_dir
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.sessions: dict[str, CurationSession] = {}
        for path in sorted(self.data_dir.glob("*.json")):
            state = json.loads(path.read_text(encoding="utf-8"))
            self.sessions[state["asset"]["asset_id"]] = CurationSession.from_state(state)

    def persist(self, cs: CurationSession) -> None:
        path = self.data_dir / f"{cs.asset.asset_id}.json"
        path.write_text(json.dumps(cs.to_state(), sort_keys=True, indent=2), encoding="utf-8")

    def get(self, asset_id: str) -> CurationSession:
        if asset_id not in self.sessions:
            raise HTTPException(status_code=404, detail=f"unknown asset {asset_id!r}")
        return self.sessions[asset_id]


def create_app(data_dir: Path | None = None, ui_dir: Path | None = None) -> FastAPI:
    store = Store(data_dir or default_data_dir())
    app = FastAPI(title="peakcut curation service")
    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    @app.get("/api/v1/assets")
    def list_assets():
        return [
            {
                "asset_id": cs.asset.asset_id,
                "duration": cs.asset.duration,
                "revision": cs.revision,
                "pipeline": cs.config.pipeline,
            }
            for cs in store.sessions.values()
        ]

    @app.post("/api/v1/assets", status_code=201)
    def register_asset(body: RegisterAsset):
        try:
            asset = AssetInfo(
                asset_id=body.asset["asset_id"],
                air_start=float(body.asset["air_start"]),
                duration=float(body.asset["duration"]),
            )
            config = CurationConfig.from_dict(body.config or {})
        except (KeyError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        if not Path(body.sessions_path).exists():
            raise HTTPException(status_code=422, detail=f"sessions_path not found: {body.sessions_path}")
        cs = CurationSession(asset=asset, reg=body, config=config)
        store.sessions[asset.asset_id] = cs
        store.persist(cs)
        return {"asset_id": asset.asset_id, "revision": cs.revision}

    @app.get("/api/v1/assets/{asset_id}/timeline")
    def get_timeline(asset_id: str, cohort: str = Query("all")):
        cs = store.get(asset_id)
        if cohort not in ("all", "early", "late"):
            raise HTTPException(status_code=422, detail="cohort must be all|early|late")
        cfg = CurationConfig.from_dict({**cs.config.to_dict(), "cohort": cohort})
        tl = compute_timeline(cs.sessions(), cs.asset, cfg)
        return tl.to_dict()

    @app.get("/api/v1/assets/{asset_id}/segments")
    def get_segments(asset_id: str):
        cs = store.get(asset_id)
        return {"revision": cs.revision, "config": cs.config.to_dict(), "segments": cs.proposal_rows()}

    @app.get("/api/v1/assets/{asset_id}/tags")
    def get_tags(asset_id: str):
        cs = store.get(asset_id)
        meta = cs.meta()
        return {
            "shots": list(meta.shots.boundaries) if meta.shots else [],
            "tags": [
                {
                    "label": t.label,
                    "category": t.category,
                    "start": t.start,
                    "end": t.end,
                    "confidence": t.confidence,
                    "source": t.source,
                }
                for t in meta.tags
            ],
        }

    @app.patch("/api/v1/assets/{asset_id}/config")
    def patch_config(asset_id: str, body: ConfigPatch):
        cs = store.get(asset_id)
        with cs.lock:
            if body.revision != cs.revision:
                raise HTTPException(status_code=409, detail=f"stale revision {body.revision}, current {cs.revision}")
            try:
                merged = {**cs.config.to_dict(), **body.config}
                cs.config = CurationConfig.from_dict(merged)
            except (ValueError, TypeError) as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            cs.revision += 1
            store.persist(cs)
            return {"revision": cs.revision, "config": cs.config.to_dict(), "segments": cs.proposal_rows()}

    @app.post("/api/v1/assets/{asset_id}/segments/{segment_id}/status")
    def post_status(asset_id: str, segment_id: str, body: StatusPost):
        cs = store.get(asset_id)
        with cs.lock:
            if body.revision != cs.revision:
                raise HTTPException(status_code=409, detail=f"stale revision {body.revision}, current {cs.revision}")
            known = {row["id"] for row in cs.proposal_rows()}
            if segment_id not in known:
                raise HTTPException(status_code=404, detail=f"unknown segment {segment_id!r}")
            if body.action == "trim":
                if body.start is None or body.end is None:
                    raise HTTPException(status_code=422, detail="trim needs start and end")
                if not (0 <= body.start < body.end <= cs.asset.duration):
                    raise HTTPException(status_code=422, detail="trim interval outside the asset")
                cs.statuses[segment_id] = {"status": "trimmed", "trim": {"start": body.start, "end": body.end}}
            elif body.action == "clear":
                cs.statuses.pop(segment_id, None)
            else:
                cs.statuses[segment_id] = {"status": body.action + "ed"}
            cs.revision += 1
            store.persist(cs)
            return {"revision": cs.revision, "segments": cs.proposal_rows()}

    @app.post("/api/v1/assets/{asset_id}/export")
    def export(asset_id: str, format: str = Query("json")):
        cs = store.get(asset_id)
        if format not in ("json", "concat_txt"):
            raise HTTPException(status_code=422, detail="format must be json|concat_txt")
        result = cs.run()
        clips = []
        for prop, seed in zip(result.proposals, result.seed_of_proposal):
            status = cs.statuses.get(seed_key(seed), {"status": "proposed"})
            name = status.get("status", "proposed")
            if name == "rejected":
                continue
            if name == "trimmed":
                trim = status["trim"]
                clips.append(prop.with_bounds(trim["start"], trim["end"]))
            else:  # proposed or accepted
                clips.append(prop)
        if not clips:
            raise HTTPException(status_code=422, detail="no clips to export")
        reel = build_reel(clips, cs.asset, result.timeline, cs.config)
        payload = export_cutlist(reel, format)
        media = "application/json" if format == "json" else "text/plain"
        return Response(content=payload, media_type=media)

    return app
