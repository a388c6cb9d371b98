"""Variant-2 pipeline: score an external event partition by mean rewatch and keep the top k."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import EventOutOfRange
from .metadata import ShotTrack
from .refine import RefineConfig, expand_short, merge_close, snap_to_shots
from .segments import Segment
from .timeline import RewatchTimeline

_EPS = 1e-9


@dataclass(frozen=True)
class Event:
    """One externally delimited unit of content (a tennis point, a play, ...)."""

    start: float
    end: float
    label: str
    attributes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.end <= self.start:
            raise ValueError(f"event interval must be nonempty: [{self.start}, {self.end})")


@dataclass(frozen=True)
class EventPartition:
    events: tuple[Event, ...]

    def __post_init__(self):
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        for a, b in zip(events, events[1:]):
            if b.start < a.start:
                raise ValueError("events must be sorted by start")
            if b.start < a.end:
                raise ValueError(f"events overlap: [{a.start}, {a.end}) and [{b.start}, {b.end})")

    def __len__(self) -> int:
        return len(self.events)

    @classmethod
    def from_dict(cls, d: dict) -> "EventPartition":
        return cls(
            tuple(
                Event(
                    start=float(e["start"]),
                    end=float(e["end"]),
                    label=str(e.get("label", "")),
                    attributes=dict(e.get("attributes", {})),
                )
                for e in d["events"]
            )
        )

    @classmethod
    def from_json(cls, text: str | bytes) -> "EventPartition":
        return cls.from_dict(json.loads(text))


def score_events(partition: EventPartition, timeline: RewatchTimeline) -> list[tuple[Event, float]]:
    """Score each event by the mean normalized rewatch value of the bins it owns.

    A bin belongs to the event whose interval contains the bin's start, so
    boundary bins are counted exactly once. Events too short to own a bin
    score 0.
    """
    n = timeline.n_bins
    span = n * timeline.bin
    scored = []
    for ev in partition.events:
        if ev.start < -_EPS or ev.end > span + _EPS:
            raise EventOutOfRange(
                f"event [{ev.start}, {ev.end}) outside the asset timeline [0, {span})"
            )
        lo = max(0, math.ceil(ev.start / timeline.bin - _EPS))
        hi = min(n, math.ceil(ev.end / timeline.bin - _EPS))
        if hi <= lo:
            scored.append((ev, 0.0))
        else:
            scored.append((ev, float(timeline.normalized[lo:hi].mean())))
    return scored


def top_k_events(scored: list[tuple[Event, float]], k: int) -> list[Segment]:
    """The min(k, n) highest-scoring events as chronological segments.

    Ties at the cut go to the earlier event, keeping selection deterministic
    and narrative order intact.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    ranked = sorted(scored, key=lambda es: (-es[1], es[0].start))
    chosen = sorted(ranked[: min(k, len(ranked))], key=lambda es: es[0].start)
    return [
        Segment(start=ev.start, end=ev.end, score=score, source="v2_event", labels=frozenset([ev.label]) if ev.label else frozenset())
        for ev, score in chosen
    ]


def v2_pipeline(
    partition: EventPartition,
    timeline: RewatchTimeline,
    shots: ShotTrack | None,
    k: int,
    refine: RefineConfig | None = None,
) -> list[Segment]:
    """Score -> top-k -> shot smoothing. Merge/expand only when a config asks for them."""
    if len(partition) == 0:
        return []
    picks = top_k_events(score_events(partition, timeline), k)
    if refine is not None:
        picks = merge_close(picks, refine.merge_gap)
        picks = expand_short(picks, refine.min_len, timeline.n_bins * timeline.bin)
    snap_mode = refine.snap_mode if refine is not None else "shot_cover"
    if shots is not None and snap_mode != "none":
        picks = snap_to_shots(picks, shots, snap_mode)
    return picks
