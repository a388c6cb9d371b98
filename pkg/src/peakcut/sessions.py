"""Viewership log ingestion: parse play logs into sessions, select the viewer base, split cohorts."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .errors import AssetMismatch, MalformedStream, UnknownFormat
from .segments import union_length

MODES = ("live", "replay")


@dataclass(frozen=True)
class PlayInterval:
    """One playback pass over [content_start, content_end) starting at wall-clock wall_start."""

    content_start: float
    content_end: float
    wall_start: float
    mode: str

    def __post_init__(self):
        if self.content_start < 0 or self.content_end <= self.content_start:
            raise ValueError(
                f"bad content interval [{self.content_start}, {self.content_end})"
            )
        if self.wall_start < 0:
            raise ValueError(f"wall_start must be >= 0, got {self.wall_start}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


@dataclass
class ViewSession:
    """All plays by one anonymized viewer on one asset, ordered by wall_start.

    `region` is carried from the log record for viewer-base filtering; it is an
    opaque code matched exactly.
    """

    viewer_id: str
    asset_id: str
    plays: list[PlayInterval]
    region: str | None = None

    def __post_init__(self):
        if not self.plays:
            raise ValueError("session must have at least one play")
        self.plays = sorted(self.plays, key=lambda p: p.wall_start)

    def watched_seconds(self) -> float:
        """Union of content-time coverage; double-watching does not inflate this."""
        return union_length([(p.content_start, p.content_end) for p in self.plays])

    def has_replay(self) -> bool:
        return any(p.mode == "replay" for p in self.plays)


@dataclass(frozen=True)
class AssetInfo:
    asset_id: str
    air_start: float
    duration: float

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError(f"asset duration must be > 0, got {self.duration}")


@dataclass(frozen=True)
class ViewerBaseFilter:
    """Criteria defining the relevant viewer base; supplied criteria are conjunctive."""

    min_watch: float = 0.0
    region_allow: frozenset[str] | None = None
    max_hours_after_air: float | None = None
    require_replay: bool = False

    def __post_init__(self):
        if self.min_watch < 0:
            raise ValueError("min_watch must be >= 0")
        if self.max_hours_after_air is not None and self.max_hours_after_air <= 0:
            raise ValueError("max_hours_after_air must be > 0 when present")
        if self.region_allow is not None and not isinstance(self.region_allow, frozenset):
            object.__setattr__(self, "region_allow", frozenset(self.region_allow))


@dataclass(frozen=True)
class CohortWindows:
    """Half-open hour ranges (offsets from airing) defining the early/late rewatch cohorts."""

    early: tuple[float, float] = (0.0, 12.0)
    late: tuple[float, float] = (24.0, 48.0)

    def __post_init__(self):
        for name, (lo, hi) in (("early", self.early), ("late", self.late)):
            if hi <= lo:
                raise ValueError(f"{name} window must be nonempty, got [{lo}, {hi})")
        if max(self.early[0], self.late[0]) < min(self.early[1], self.late[1]):
            raise ValueError("cohort windows must be disjoint")


@dataclass
class ParseResult:
    """Sessions recovered from a stream plus a report of skipped lines."""

    sessions: list[ViewSession]
    report: list[dict] = field(default_factory=list)

    def report_jsonl(self) -> str:
        return "".join(json.dumps(entry) + "\n" for entry in self.report)


def _play_from_record(rec: dict) -> PlayInterval:
    return PlayInterval(
        content_start=float(rec["cs"]),
        content_end=float(rec["ce"]),
        wall_start=float(rec["ws"]),
        mode=str(rec["mode"]),
    )


def _parse_jsonl_line(line: str) -> list[tuple[str, str, str | None, PlayInterval]]:
    rec = json.loads(line)
    if not isinstance(rec, dict):
        raise ValueError("record is not an object")
    viewer = str(rec["viewer_id"])
    asset = str(rec["asset_id"])
    region = rec.get("region")
    plays = rec["plays"]
    if not isinstance(plays, list) or not plays:
        raise ValueError("plays must be a nonempty list")
    return [(viewer, asset, region, _play_from_record(p)) for p in plays]


def _parse_csv_line(row: dict) -> list[tuple[str, str, str | None, PlayInterval]]:
    missing = [k for k in ("viewer_id", "asset_id", "cs", "ce", "ws", "mode") if not row.get(k)]
    if missing:
        raise ValueError(f"missing fields: {', '.join(missing)}")
    play = _play_from_record(row)
    return [(str(row["viewer_id"]), str(row["asset_id"]), row.get("region") or None, play)]


def parse_sessions(stream, fmt: str = "jsonl", abort_threshold: float = 0.10) -> ParseResult:
    """Parse a session log stream into one ViewSession per (viewer_id, asset_id).

    Malformed lines are skipped and reported. If more than `abort_threshold`
    of the lines are malformed the whole parse is rejected (MalformedStream);
    dirty feeds are tolerated, silently broken ones are not.

    `stream` may be a text/bytes file object, bytes, or str.
    """
    if fmt not in ("jsonl", "csv"):
        raise UnknownFormat(f"unknown session log format {fmt!r}")
    text = _as_text(stream)

    report: list[dict] = []
    grouped: dict[tuple[str, str], dict] = {}
    n_lines = 0

    if fmt == "jsonl":
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            n_lines += 1
            try:
                entries = _parse_jsonl_line(line)
            except Exception as exc:
                report.append({"line": lineno, "reason": _reason(exc)})
                continue
            for viewer, asset, region, play in entries:
                _add_play(grouped, viewer, asset, region, play)
    else:
        reader = csv.DictReader(io.StringIO(text))
        # DictReader consumes the header as line 1; data rows start at line 2.
        for lineno, row in enumerate(reader, start=2):
            n_lines += 1
            try:
                entries = _parse_csv_line(row)
            except Exception as exc:
                report.append({"line": lineno, "reason": _reason(exc)})
                continue
            for viewer, asset, region, play in entries:
                _add_play(grouped, viewer, asset, region, play)

    if n_lines and len(report) / n_lines > abort_threshold:
        raise MalformedStream(
            f"{len(report)}/{n_lines} lines malformed exceeds abort threshold {abort_threshold:.0%}",
            report,
        )

    sessions = [
        ViewSession(viewer_id=v, asset_id=a, plays=g["plays"], region=g["region"])
        for (v, a), g in grouped.items()
    ]
    sessions.sort(key=lambda s: (s.asset_id, s.viewer_id))
    return ParseResult(sessions=sessions, report=report)


def _add_play(grouped, viewer, asset, region, play):
    key = (viewer, asset)
    if key not in grouped:
        grouped[key] = {"plays": [], "region": region}
    grouped[key]["plays"].append(play)
    if grouped[key]["region"] is None:
        grouped[key]["region"] = region


def _as_text(stream) -> str:
    if isinstance(stream, str):
        return stream
    if isinstance(stream, bytes):
        return stream.decode("utf-8")
    data = stream.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _reason(exc: Exception) -> str:
    if isinstance(exc, KeyError):
        return f"missing field {exc.args[0]!r}"
    return str(exc) or type(exc).__name__


def serialize_sessions(sessions: list[ViewSession]) -> str:
    """Emit sessions as the canonical JSONL wire format (inverse of parse_sessions)."""
    lines = []
    for s in sessions:
        rec = {
            "viewer_id": s.viewer_id,
            "asset_id": s.asset_id,
            "plays": [
                {"cs": p.content_start, "ce": p.content_end, "ws": p.wall_start, "mode": p.mode}
                for p in s.plays
            ],
        }
        if s.region is not None:
            rec["region"] = s.region
        lines.append(json.dumps(rec, sort_keys=True))
    return "".join(line + "\n" for line in lines)


def filter_viewer_base(
    sessions: list[ViewSession], flt: ViewerBaseFilter, asset: AssetInfo
) -> list[ViewSession]:
    """Keep the sessions satisfying every supplied criterion of the filter."""
    kept = []
    for s in sessions:
        if s.asset_id != asset.asset_id:
            raise AssetMismatch(f"session {s.viewer_id} references asset {s.asset_id}, expected {asset.asset_id}")
        if s.watched_seconds() < flt.min_watch:
            continue
        if flt.max_hours_after_air is not None:
            limit = asset.air_start + flt.max_hours_after_air * 3600.0
            if any(p.wall_start > limit for p in s.plays):
                continue
        if flt.region_allow is not None and s.region not in flt.region_allow:
            continue
        if flt.require_replay and not s.has_replay():
            continue
        kept.append(s)
    return kept


def cohort_split(
    sessions: list[ViewSession], asset: AssetInfo, windows: CohortWindows = CohortWindows()
) -> tuple[list[ViewSession], list[ViewSession]]:
    """Split sessions into (early, late) rewatch cohorts.

    The cohort is decided by the earliest replay-mode play's offset from
    airing; sessions that never replayed belong to neither cohort.
    """
    early, late = [], []
    for s in sessions:
        if s.asset_id != asset.asset_id:
            raise AssetMismatch(f"session {s.viewer_id} references asset {s.asset_id}, expected {asset.asset_id}")
        replays = [p.wall_start for p in s.plays if p.mode == "replay"]
        if not replays:
            continue
        offset_h = (min(replays) - asset.air_start) / 3600.0
        if windows.early[0] <= offset_h < windows.early[1]:
            early.append(s)
        elif windows.late[0] <= offset_h < windows.late[1]:
            late.append(s)
    return early, late
