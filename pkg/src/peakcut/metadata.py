"""Content metadata aligned to the asset timeline: shot boundaries, tags, captions."""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

from .errors import EmptyShotTrack

TAG_CATEGORIES = ("actor", "emotion", "theme", "scene", "other")


@dataclass(frozen=True)
class ShotTrack:
    """Shot boundaries as a strictly increasing list from 0 to the asset duration."""

    boundaries: tuple[float, ...]

    def __post_init__(self):
        b = tuple(float(x) for x in self.boundaries)
        object.__setattr__(self, "boundaries", b)
        if len(b) < 2:
            raise EmptyShotTrack("shot track needs at least two boundaries")
        if b[0] != 0:
            raise ValueError(f"first shot boundary must be 0, got {b[0]}")
        if any(y <= x for x, y in zip(b, b[1:])):
            raise ValueError("shot boundaries must be strictly increasing")

    @property
    def duration(self) -> float:
        return self.boundaries[-1]

    @property
    def n_shots(self) -> int:
        return len(self.boundaries) - 1

    def shot(self, i: int) -> tuple[float, float]:
        return self.boundaries[i], self.boundaries[i + 1]

    def covering_run(self, start: float, end: float) -> tuple[int, int]:
        """Indices [i, j] of the minimal run of shots intersecting [start, end)."""
        i = max(0, bisect_right(self.boundaries, start) - 1)
        j = min(self.n_shots - 1, max(i, bisect_left(self.boundaries, end) - 1))
        return i, j

    def shot_containing(self, t: float) -> int:
        """Index of the shot whose half-open interval contains t (last shot at t == duration)."""
        i = bisect_right(self.boundaries, t) - 1
        return min(max(i, 0), self.n_shots - 1)


@dataclass(frozen=True)
class MetadataTag:
    """One labeled interval from a content-analysis source (actor on screen, emotion, ...)."""

    label: str
    category: str
    start: float
    end: float
    confidence: float = 1.0
    source: str = ""

    def __post_init__(self):
        if self.end <= self.start:
            raise ValueError(f"tag interval must be nonempty: [{self.start}, {self.end})")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence must be in [0, 1], got {self.confidence}")
        object.__setattr__(self, "label", self.label.lower())
        object.__setattr__(self, "category", self.category.lower())


@dataclass(frozen=True)
class CaptionCue:
    """One closed-caption cue: [start, end) plus its text."""

    start: float
    end: float
    text: str

    def __post_init__(self):
        if self.end <= self.start:
            raise ValueError(f"caption cue must be nonempty: [{self.start}, {self.end})")

    @property
    def duration(self) -> float:
        return self.end - self.start


@dataclass
class MetadataTrack:
    """The metadata file contents: shots plus any tags and captions."""

    shots: ShotTrack | None = None
    tags: list[MetadataTag] = field(default_factory=list)
    captions: list[CaptionCue] = field(default_factory=list)

    @classmethod
    def from_dict(cls, d: dict) -> "MetadataTrack":
        shots = ShotTrack(tuple(d["shots"])) if d.get("shots") else None
        tags = [
            MetadataTag(
                label=t["label"],
                category=t.get("category", "other"),
                start=float(t["start"]),
                end=float(t["end"]),
                confidence=float(t.get("confidence", 1.0)),
                source=t.get("source", ""),
            )
            for t in d.get("tags", [])
        ]
        captions = [
            CaptionCue(start=float(c["start"]), end=float(c["end"]), text=str(c["text"]))
            for c in d.get("captions", [])
        ]
        return cls(shots=shots, tags=tags, captions=captions)

    @classmethod
    def from_json(cls, text: str | bytes) -> "MetadataTrack":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {
            "shots": list(self.shots.boundaries) if self.shots else [],
            "tags": [
                {
                    "label": t.label,
                    "category": t.category,
                    "start": t.start,
                    "end": t.end,
                    "confidence": t.confidence,
                    "source": t.source,
                }
                for t in self.tags
            ],
            "captions": [{"start": c.start, "end": c.end, "text": c.text} for c in self.captions],
        }
