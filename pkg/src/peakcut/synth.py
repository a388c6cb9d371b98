"""Synthetic viewer populations with planted high-interest intervals, plus detection oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadConfig
from .segments import Segment, iou, overlap_seconds
from .sessions import AssetInfo, PlayInterval, ViewSession

NOISE_WINDOW_S = 15.0


@dataclass(frozen=True)
class PlantedInterval:
    start: float
    end: float
    rewatch_p: float

    def __post_init__(self):
        if self.end <= self.start:
            raise BadConfig(f"planted interval must be nonempty: [{self.start}, {self.end})")
        if not 0.0 <= self.rewatch_p <= 1.0:
            raise BadConfig(f"rewatch_p must be in [0, 1], got {self.rewatch_p}")


@dataclass(frozen=True)
class SynthConfig:
    """Bernoulli-per-viewer generative model; simple on purpose, realism is a non-goal.

    Viewers optionally watch live, replay each planted interval with its own
    probability, and replay each planted-free 15 s slot with
    baseline_rewatch_p (the background noise floor).
    """

    n_viewers: int
    duration: float
    baseline_rewatch_p: float
    planted: tuple[PlantedInterval, ...] = ()
    live_watch_p: float = 1.0
    rng_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "planted", tuple(self.planted))
        if self.n_viewers < 0:
            raise BadConfig("n_viewers must be >= 0")
        if self.duration <= 0:
            raise BadConfig("duration must be > 0")
        for p in (self.baseline_rewatch_p, self.live_watch_p):
            if not 0.0 <= p <= 1.0:
                raise BadConfig(f"probability out of [0, 1]: {p}")
        spans = sorted((p.start, p.end) for p in self.planted)
        for (a0, a1), (b0, b1) in zip(spans, spans[1:]):
            if b0 < a1:
                raise BadConfig("planted intervals must be pairwise disjoint")
        for p in self.planted:
            if p.start < 0 or p.end > self.duration:
                raise BadConfig(f"planted interval [{p.start}, {p.end}) outside the asset")

    @classmethod
    def from_dict(cls, d: dict) -> "SynthConfig":
        return cls(
            n_viewers=int(d["n_viewers"]),
            duration=float(d["duration"]),
            baseline_rewatch_p=float(d["baseline_rewatch_p"]),
            planted=tuple(
                PlantedInterval(float(p["start"]), float(p["end"]), float(p["rewatch_p"]))
                for p in d.get("planted", [])
            ),
            live_watch_p=float(d.get("live_watch_p", 1.0)),
            rng_seed=int(d.get("rng_seed", 0)),
        )

    def to_dict(self) -> dict:
        return {
            "n_viewers": self.n_viewers,
            "duration": self.duration,
            "baseline_rewatch_p": self.baseline_rewatch_p,
            "planted": [
                {"start": p.start, "end": p.end, "rewatch_p": p.rewatch_p} for p in self.planted
            ],
            "live_watch_p": self.live_watch_p,
            "rng_seed": self.rng_seed,
        }


def _noise_slots(cfg: SynthConfig) -> list[tuple[float, float]]:
    """Aligned 15 s windows that fit the asset and avoid every planted interval."""
    slots = []
    n = int(math.floor(cfg.duration / NOISE_WINDOW_S))
    for k in range(n):
        lo, hi = k * NOISE_WINDOW_S, (k + 1) * NOISE_WINDOW_S
        if all(overlap_seconds(lo, hi, p.start, p.end) == 0.0 for p in cfg.planted):
            slots.append((lo, hi))
    return slots


def generate_sessions(
    cfg: SynthConfig, asset_id: str = "synth", air_start: float = 1_600_000_000.0
) -> tuple[list[ViewSession], dict]:
    """Deterministic session population for `cfg`, plus the planted ground truth.

    Each viewer draws from its own rng substream ([rng_seed, viewer index]),
    so generation order or sharding cannot change the output.
    """
    slots = _noise_slots(cfg)
    sessions = []
    for v in range(cfg.n_viewers):
        rng = np.random.default_rng([cfg.rng_seed, v])
        u = rng.random(1 + len(cfg.planted) + len(slots))
        plays = []
        if u[0] < cfg.live_watch_p:
            plays.append(PlayInterval(0.0, cfg.duration, air_start, "live"))
        replay_at = air_start + cfg.duration + 3600.0
        for i, planted in enumerate(cfg.planted):
            if u[1 + i] < planted.rewatch_p:
                plays.append(
                    PlayInterval(planted.start, planted.end, replay_at + 60.0 * i, "replay")
                )
        base = 1 + len(cfg.planted)
        for j, (lo, hi) in enumerate(slots):
            if u[base + j] < cfg.baseline_rewatch_p:
                plays.append(PlayInterval(lo, hi, replay_at + 600.0 + 60.0 * j, "replay"))
        if plays:
            sessions.append(ViewSession(viewer_id=f"v{v:05d}", asset_id=asset_id, plays=plays))
    ground_truth = {
        "asset_id": asset_id,
        "planted": [{"start": p.start, "end": p.end, "rewatch_p": p.rewatch_p} for p in cfg.planted],
        "config": cfg.to_dict(),
    }
    return sessions, ground_truth


def synth_asset(cfg: SynthConfig, asset_id: str = "synth", air_start: float = 1_600_000_000.0) -> AssetInfo:
    return AssetInfo(asset_id=asset_id, air_start=air_start, duration=cfg.duration)


def recovery_report(
    planted: list[tuple[float, float]], detected: list[Segment]
) -> dict:
    """How well detections recover the planted intervals.

    Per planted interval: the best IoU over detections. False positives are
    detections overlapping no planted interval at all.
    """
    per_interval = []
    for span in planted:
        best = 0.0
        for seg in detected:
            best = max(best, iou(span, (seg.start, seg.end)))
        per_interval.append({"start": span[0], "end": span[1], "best_iou": best})
    false_positives = [
        seg
        for seg in detected
        if all(overlap_seconds(seg.start, seg.end, a, b) == 0.0 for a, b in planted)
    ]
    return {"per_interval": per_interval, "false_positives": false_positives}


def brute_force_quantile(values, q):
    """Independent quantile oracle: sort and linearly interpolate at q*(n-1).

    Works on floats and exact number types; kept separate from the detector
    so the two can check each other.
    """
    ordered = sorted(values)
    n = len(ordered)
    if n == 0:
        raise ValueError("quantile of empty list")
    if n == 1:
        return ordered[0]
    pos = q * (n - 1)
    lo = math.floor(pos)
    if lo >= n - 1:
        return ordered[n - 1]
    frac = pos - lo
    return ordered[lo] + (ordered[lo + 1] - ordered[lo]) * frac
