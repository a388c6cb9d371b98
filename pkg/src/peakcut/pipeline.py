"""End-to-end curation runs shared by the CLI and the service.

Keeping the orchestration here is what makes service exports byte-identical
to CLI exports: both sides feed the same config through the same functions.
"""

from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass, field

from .detect import IqrConfig, detect_seed_bins, group_seed_segments
from .events import EventPartition, v2_pipeline
from .metadata import MetadataTrack
from .refine import RefineConfig, expand_short, merge_close, refine_segments
from .reel import HighlightReel, assemble_reel
from .segments import Segment
from .sessions import (
    AssetInfo,
    CohortWindows,
    ViewSession,
    ViewerBaseFilter,
    cohort_split,
    filter_viewer_base,
)
from .timeline import RewatchTimeline, compute_rewatch_timeline, normalize

PIPELINES = ("v1", "v2")
COHORTS = ("all", "early", "late")


@dataclass(frozen=True)
class CurationConfig:
    """Every knob a curation run depends on; the export provenance snapshots it."""

    pipeline: str = "v1"
    bin_s: float = 1.0
    window_s: float = 15.0
    k: float = 1.5
    merge_gap: float = 5.0
    min_len: float = 15.0
    snap_mode: str = "shot_cover"
    tag_expr: str | None = None
    tag_min_overlap: float = 0.0
    max_total: float | None = None
    top_k: int = 15
    cohort: str = "all"
    min_watch: float = 0.0
    require_replay: bool = False

    def __post_init__(self):
        if self.pipeline not in PIPELINES:
            raise ValueError(f"pipeline must be one of {PIPELINES}")
        if self.cohort not in COHORTS:
            raise ValueError(f"cohort must be one of {COHORTS}")
        RefineConfig(
            merge_gap=self.merge_gap,
            min_len=self.min_len,
            snap_mode=self.snap_mode,
            max_total=self.max_total,
            tag_min_overlap=self.tag_min_overlap,
        )
        IqrConfig(k=self.k)

    def refine_config(self) -> RefineConfig:
        return RefineConfig(
            merge_gap=self.merge_gap,
            min_len=self.min_len,
            snap_mode=self.snap_mode,
            max_total=self.max_total,
            tag_min_overlap=self.tag_min_overlap,
        )

    def iqr_config(self) -> IqrConfig:
        return IqrConfig(k=self.k)

    def viewer_filter(self) -> ViewerBaseFilter:
        return ViewerBaseFilter(min_watch=self.min_watch, require_replay=self.require_replay)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "CurationConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**d)


@dataclass
class CurationResult:
    """A full run: the timeline, the raw seeds, and the refined proposals.

    seeds are the pre-refinement intervals that give proposals their stable
    identity across parameter changes.
    """

    timeline: RewatchTimeline
    seeds: list[Segment]
    proposals: list[Segment]
    seed_of_proposal: list[tuple[float, float]] = field(default_factory=list)


def timeline_digest(timeline: RewatchTimeline) -> str:
    return hashlib.sha256(timeline.to_json().encode("utf-8")).hexdigest()


def select_base(
    sessions: list[ViewSession], asset: AssetInfo, cfg: CurationConfig
) -> list[ViewSession]:
    base = filter_viewer_base(sessions, cfg.viewer_filter(), asset)
    if cfg.cohort == "all":
        return base
    early, late = cohort_split(base, asset, CohortWindows())
    return early if cfg.cohort == "early" else late


def compute_timeline(
    sessions: list[ViewSession], asset: AssetInfo, cfg: CurationConfig
) -> RewatchTimeline:
    base = select_base(sessions, asset, cfg)
    return normalize(
        compute_rewatch_timeline(base, asset, cfg.bin_s, cfg.window_s, allow_empty=True)
    )


def v1_seeds(timeline: RewatchTimeline, cfg: CurationConfig) -> list[Segment]:
    mask = detect_seed_bins(timeline.normalized, cfg.iqr_config())
    return group_seed_segments(mask, timeline.bin, timeline.normalized)


def v1_pre_snap(seeds: list[Segment], timeline: RewatchTimeline, cfg: CurationConfig) -> list[Segment]:
    """V1 up to (not including) shot alignment: merge then expand."""
    duration = timeline.n_bins * timeline.bin
    merged = merge_close(seeds, cfg.merge_gap)
    return expand_short(merged, cfg.min_len, duration)


def run_curation(
    sessions: list[ViewSession],
    asset: AssetInfo,
    meta: MetadataTrack,
    cfg: CurationConfig,
    events: EventPartition | None = None,
) -> CurationResult:
    """Produce proposals for the configured pipeline, with per-proposal seed identity."""
    timeline = compute_timeline(sessions, asset, cfg)
    if cfg.pipeline == "v1":
        seeds = v1_seeds(timeline, cfg)
        proposals = refine_segments(
            seeds,
            cfg.refine_config(),
            meta.shots,
            asset.duration,
            tag_expr=cfg.tag_expr,
            tags=meta.tags,
        )
    else:
        if events is None:
            raise ValueError("v2 pipeline needs an event partition")
        seeds = [
            Segment(ev.start, ev.end, score, source="v2_event")
            for ev, score in _scored_events(events, timeline)
        ]
        proposals = v2_pipeline(events, timeline, meta.shots, cfg.top_k)
    seed_of = _attach_seed_identity(seeds, proposals)
    return CurationResult(
        timeline=timeline, seeds=seeds, proposals=proposals, seed_of_proposal=seed_of
    )


def _scored_events(events: EventPartition, timeline: RewatchTimeline):
    from .events import score_events

    return score_events(events, timeline)


def _attach_seed_identity(seeds: list[Segment], proposals: list[Segment]):
    """Identity of a proposal = the first seed interval it grew from.

    Curator accept/reject decisions key on this, so retuning parameters
    keeps statuses for any proposal whose originating seed persists.
    """
    out = []
    for prop in proposals:
        owner = None
        for seed in seeds:
            if seed.start < prop.end and prop.start < seed.end:
                owner = (seed.start, seed.end)
                break
        if owner is None:
            owner = (prop.start, prop.end)
        out.append(owner)
    return out


def seed_key(interval: tuple[float, float]) -> str:
    return f"{interval[0]:.3f}-{interval[1]:.3f}"


def build_reel(
    proposals: list[Segment],
    asset: AssetInfo,
    timeline: RewatchTimeline,
    cfg: CurationConfig,
    header=None,
    bumpers=None,
    bumper_policy: str = "between_all",
    every_n: int | None = None,
) -> HighlightReel:
    provenance = {
        "pipeline": cfg.pipeline,
        "config": cfg.to_dict(),
        "timeline_digest": timeline_digest(timeline),
    }
    return assemble_reel(
        proposals,
        asset_id=asset.asset_id,
        header=header,
        bumpers=bumpers,
        bumper_policy=bumper_policy,
        every_n=every_n,
        provenance=provenance,
    )
