"""Highlight reel assembly and deterministic cut-list export."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import EmptyReel, OverlappingSegments, UnknownFormat
from .segments import Segment

BUMPER_POLICIES = ("between_all", "between_none", "every_n")


@dataclass(frozen=True)
class ExternalClip:
    """Reference to a clip the pipeline does not own (header, bumper)."""

    uri: str
    duration: float = 0.0


@dataclass
class HighlightReel:
    asset_id: str
    clips: list[Segment]
    header: ExternalClip | None = None
    bumpers: list[ExternalClip] = field(default_factory=list)
    bumper_policy: str = "between_all"
    every_n: int | None = None
    provenance: dict = field(default_factory=dict)

    def sequence(self):
        """Playback order: header, then clips with bumpers inserted per policy."""
        items: list = []
        if self.header is not None:
            items.append(self.header)
        for i, clip in enumerate(self.clips):
            items.append(clip)
            if i == len(self.clips) - 1 or not self.bumpers:
                continue
            if self.bumper_policy == "between_all":
                items.append(self.bumpers[i % len(self.bumpers)])
            elif self.bumper_policy == "every_n" and (i + 1) % (self.every_n or 1) == 0:
                items.append(self.bumpers[(i // (self.every_n or 1)) % len(self.bumpers)])
        return items


def assemble_reel(
    segments: list[Segment],
    asset_id: str,
    header: ExternalClip | None = None,
    bumpers: list[ExternalClip] | None = None,
    bumper_policy: str = "between_all",
    every_n: int | None = None,
    provenance: dict | None = None,
) -> HighlightReel:
    """Build a reel from refined segments; clips must be chronological and disjoint."""
    if not segments:
        raise EmptyReel("a reel needs at least one clip")
    if bumper_policy not in BUMPER_POLICIES:
        raise ValueError(f"bumper_policy must be one of {BUMPER_POLICIES}")
    if bumper_policy == "every_n" and (every_n is None or every_n < 1):
        raise ValueError("every_n policy needs every_n >= 1")
    ordered = sorted(segments, key=lambda s: (s.start, s.end))
    for a, b in zip(ordered, ordered[1:]):
        if b.start < a.end:
            raise OverlappingSegments(
                f"clips overlap: [{a.start}, {a.end}) and [{b.start}, {b.end})"
            )
    return HighlightReel(
        asset_id=asset_id,
        clips=ordered,
        header=header,
        bumpers=list(bumpers or []),
        bumper_policy=bumper_policy,
        every_n=every_n,
        provenance=dict(provenance or {}),
    )


class _Sec(float):
    """Marker for seconds fields rendered as fixed 3-decimal literals."""


def _canon(obj) -> str:
    if isinstance(obj, _Sec):
        return f"{float(obj):.3f}"
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, float, str)):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_canon(v) for v in obj) + "]"
    if isinstance(obj, dict):
        items = sorted(obj.items())
        return "{" + ",".join(json.dumps(str(k)) + ":" + _canon(v) for k, v in items) + "}"
    raise TypeError(f"cannot canonicalize {type(obj).__name__}")


def _ext_dict(clip: ExternalClip) -> dict:
    return {"uri": clip.uri, "duration": _Sec(clip.duration)}


def export_cutlist(reel: HighlightReel, fmt: str = "json") -> bytes:
    """Serialize the reel byte-identically across platforms and runs.

    json: canonical form (sorted keys, 3-decimal fixed-point seconds).
    concat_txt: one tab-separated line per playback item, LF endings.
    """
    if fmt == "json":
        doc = {
            "asset_id": reel.asset_id,
            "bumper_policy": reel.bumper_policy,
            "every_n": reel.every_n,
            "header": _ext_dict(reel.header) if reel.header else None,
            "bumpers": [_ext_dict(b) for b in reel.bumpers],
            "clips": [
                {
                    "start": _Sec(c.start),
                    "end": _Sec(c.end),
                    "score": round(c.score, 6),
                    "source": c.source,
                    "labels": sorted(c.labels),
                }
                for c in reel.clips
            ],
            "provenance": reel.provenance,
        }
        return (_canon(doc) + "\n").encode("utf-8")
    if fmt == "concat_txt":
        lines = []
        for item in reel.sequence():
            if isinstance(item, ExternalClip):
                lines.append(f"ext\t{item.uri}")
            else:
                lines.append(f"{reel.asset_id}\t{item.start:.3f}\t{item.end:.3f}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise UnknownFormat(f"unknown cut-list format {fmt!r}")


def import_cutlist(data: bytes | str) -> HighlightReel:
    """Rebuild a reel from a json export (round-trips the clip list exactly)."""
    doc = json.loads(data)
    clips = [
        Segment(
            start=c["start"],
            end=c["end"],
            score=c.get("score", 0.0),
            source=c.get("source", "v1_seed"),
            labels=frozenset(c.get("labels", ())),
        )
        for c in doc["clips"]
    ]
    header = ExternalClip(**doc["header"]) if doc.get("header") else None
    bumpers = [ExternalClip(**b) for b in doc.get("bumpers", [])]
    return HighlightReel(
        asset_id=doc["asset_id"],
        clips=clips,
        header=header,
        bumpers=bumpers,
        bumper_policy=doc.get("bumper_policy", "between_all"),
        every_n=doc.get("every_n"),
        provenance=doc.get("provenance", {}),
    )


def reel_stats(reel: HighlightReel, asset_duration: float) -> dict:
    """Clip count, clip seconds, and the fraction of the asset the clips cover.

    Header and bumpers are external media and never count toward coverage.
    """
    total = sum(c.duration for c in reel.clips)
    return {
        "clip_count": len(reel.clips),
        "total_seconds": total,
        "coverage_fraction": total / asset_duration if asset_duration > 0 else 0.0,
    }
