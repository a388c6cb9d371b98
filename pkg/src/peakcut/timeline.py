"""Per-bin rewatch-percentage metric over the asset timeline, plus min-max normalization."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import BadBinning, EmptyBase
from .sessions import AssetInfo, ViewSession

_EPS = 1e-9


@dataclass(frozen=True)
class RewatchTimeline:
    """Time series of the rewatch metric for one viewer base.

    raw[t] is the percentage of the base that rewatched the whole window of
    length `window` starting at bin t; normalized is raw min-max scaled to
    [0, 1] (all zeros until normalize() runs, and for constant raw).
    """

    asset_id: str
    bin: float
    window: float
    raw: np.ndarray
    normalized: np.ndarray
    base_size: int

    def __post_init__(self):
        object.__setattr__(self, "raw", np.asarray(self.raw, dtype=float))
        object.__setattr__(self, "normalized", np.asarray(self.normalized, dtype=float))
        if self.raw.shape != self.normalized.shape:
            raise ValueError("raw and normalized must have equal length")

    @property
    def n_bins(self) -> int:
        return len(self.raw)

    def to_dict(self) -> dict:
        return {
            "asset_id": self.asset_id,
            "bin": self.bin,
            "window": self.window,
            "base_size": self.base_size,
            "raw": [float(v) for v in self.raw],
            "normalized": [float(v) for v in self.normalized],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "RewatchTimeline":
        return cls(
            asset_id=d["asset_id"],
            bin=float(d["bin"]),
            window=float(d["window"]),
            raw=np.asarray(d["raw"], dtype=float),
            normalized=np.asarray(d["normalized"], dtype=float),
            base_size=int(d["base_size"]),
        )

    def to_csv(self) -> str:
        """Plot-ready CSV: bin_start_s,raw,normalized."""
        lines = ["bin_start_s,raw,normalized"]
        for t in range(self.n_bins):
            lines.append(f"{t * self.bin:g},{self.raw[t]:.6f},{self.normalized[t]:.6f}")
        return "\n".join(lines) + "\n"


def _covered_bin_range(cs: float, ce: float, bin_s: float, n_bins: int, duration: float):
    """Index range [lo, hi) of bins fully covered by the play [cs, ce).

    A bin counts as covered only when the play spans its entire interval,
    where the trailing bin is truncated at the asset end.
    """
    lo = max(0, math.ceil(cs / bin_s - _EPS))
    if ce >= duration - _EPS:
        hi = n_bins
    else:
        hi = math.floor(ce / bin_s + _EPS)
    return lo, min(hi, n_bins)


def _rewatch_indicator(session: ViewSession, bin_s: float, n_bins: int, duration: float) -> np.ndarray:
    """Boolean per-bin rewatch flags for one viewer.

    A bin is rewatched when covered by >= 2 of the viewer's plays, at least
    one of them in replay mode.
    """
    coverage = np.zeros(n_bins, dtype=np.int32)
    replay = np.zeros(n_bins, dtype=np.int32)
    for play in session.plays:
        lo, hi = _covered_bin_range(play.content_start, play.content_end, bin_s, n_bins, duration)
        if lo >= hi:
            continue
        coverage[lo:hi] += 1
        if play.mode == "replay":
            replay[lo:hi] += 1
    return (coverage >= 2) & (replay >= 1)


def _window_all_true(ind: np.ndarray, w_bins: int) -> np.ndarray:
    """ok[t] = every bin of [t, t + w_bins) is true, truncating at the series end."""
    n = len(ind)
    if w_bins <= 1:
        return ind.copy()
    prefix = np.concatenate(([0], np.cumsum(ind, dtype=np.int64)))
    t = np.arange(n)
    end = np.minimum(t + w_bins, n)
    return (prefix[end] - prefix[t]) == (end - t)


def compute_rewatch_timeline(
    base: list[ViewSession],
    asset: AssetInfo,
    bin_s: float = 1.0,
    window_s: float = 15.0,
    allow_empty: bool = False,
) -> RewatchTimeline:
    """Percentage of the viewer base that rewatched each window across the timeline.

    Counting is integer per viewer (window rewatched iff every bin of it is
    rewatched) with a single final division, so results do not depend on
    accumulation order.
    """
    if bin_s <= 0 or window_s < bin_s:
        raise BadBinning(f"need bin > 0 and window >= bin, got bin={bin_s} window={window_s}")
    if not base and not allow_empty:
        raise EmptyBase("viewer base is empty")
    for s in base:
        if s.asset_id != asset.asset_id:
            raise ValueError(f"session {s.viewer_id} is for asset {s.asset_id}, expected {asset.asset_id}")

    n_bins = math.ceil(asset.duration / bin_s - _EPS)
    w_bins = math.ceil(window_s / bin_s - _EPS)
    counts = np.zeros(n_bins, dtype=np.int64)
    for session in base:
        ind = _rewatch_indicator(session, bin_s, n_bins, asset.duration)
        counts += _window_all_true(ind, w_bins)

    base_size = len(base)
    raw = 100.0 * counts / base_size if base_size else np.zeros(n_bins)
    return RewatchTimeline(
        asset_id=asset.asset_id,
        bin=bin_s,
        window=window_s,
        raw=raw,
        normalized=np.zeros(n_bins),
        base_size=base_size,
    )


def normalize(timeline: RewatchTimeline) -> RewatchTimeline:
    """Min-max scale raw into [0, 1]; a constant series normalizes to all zeros."""
    raw = timeline.raw
    if len(raw) == 0:
        return replace(timeline, normalized=raw.copy())
    lo, hi = float(raw.min()), float(raw.max())
    if hi == lo:
        normalized = np.zeros(len(raw))
    else:
        normalized = (raw - lo) / (hi - lo)
    return replace(timeline, normalized=normalized)


def cohort_timelines(
    early: list[ViewSession],
    late: list[ViewSession],
    asset: AssetInfo,
    bin_s: float = 1.0,
    window_s: float = 15.0,
) -> tuple[RewatchTimeline, RewatchTimeline]:
    """Normalized timelines for the early/late cohorts, sharing bin and window."""
    early_tl = normalize(compute_rewatch_timeline(early, asset, bin_s, window_s, allow_empty=True))
    late_tl = normalize(compute_rewatch_timeline(late, asset, bin_s, window_s, allow_empty=True))
    return early_tl, late_tl
