"""peakcut: viewership-driven highlight curation.

Turns anonymized DVR rewatch logs into a normalized interest timeline,
detects peak-interest segments (or ranks external event partitions), refines
them into coherent clips, and exports deterministic cut lists.
"""

from .compare import (
    ClipAnnotation,
    ComparisonMatrix,
    SourceCorpus,
    agreement_stats,
    build_matrix,
    caption_overlap_seconds,
    text_intersect,
    tokenize_lemmatize,
)
from .detect import IqrConfig, detect_seed_bins, group_seed_segments
from .events import Event, EventPartition, score_events, top_k_events, v2_pipeline
from .metadata import CaptionCue, MetadataTag, MetadataTrack, ShotTrack
from .pipeline import CurationConfig, CurationResult, run_curation
from .reel import (
    ExternalClip,
    HighlightReel,
    assemble_reel,
    export_cutlist,
    import_cutlist,
    reel_stats,
)
from .refine import (
    RefineConfig,
    enforce_budget,
    expand_short,
    filter_by_tags,
    merge_close,
    refine_segments,
    snap_to_shots,
)
from .segments import Segment
from .sessions import (
    AssetInfo,
    CohortWindows,
    ParseResult,
    PlayInterval,
    ViewSession,
    ViewerBaseFilter,
    cohort_split,
    filter_viewer_base,
    parse_sessions,
    serialize_sessions,
)
from .synth import SynthConfig, PlantedInterval, brute_force_quantile, generate_sessions, recovery_report
from .tagexpr import parse_tag_expr
from .timeline import RewatchTimeline, cohort_timelines, compute_rewatch_timeline, normalize

__version__ = "0.1.0"

__all__ = [
    "AssetInfo",
    "CaptionCue",
    "ClipAnnotation",
    "CohortWindows",
    "ComparisonMatrix",
    "CurationConfig",
    "CurationResult",
    "Event",
    "EventPartition",
    "ExternalClip",
    "HighlightReel",
    "IqrConfig",
    "MetadataTag",
    "MetadataTrack",
    "ParseResult",
    "PlantedInterval",
    "PlayInterval",
    "RefineConfig",
    "RewatchTimeline",
    "Segment",
    "ShotTrack",
    "SourceCorpus",
    "SynthConfig",
    "ViewSession",
    "ViewerBaseFilter",
    "agreement_stats",
    "assemble_reel",
    "brute_force_quantile",
    "build_matrix",
    "caption_overlap_seconds",
    "cohort_split",
    "cohort_timelines",
    "compute_rewatch_timeline",
    "detect_seed_bins",
    "enforce_budget",
    "expand_short",
    "export_cutlist",
    "filter_by_tags",
    "filter_viewer_base",
    "generate_sessions",
    "group_seed_segments",
    "import_cutlist",
    "merge_close",
    "normalize",
    "parse_sessions",
    "parse_tag_expr",
    "recovery_report",
    "reel_stats",
    "refine_segments",
    "run_curation",
    "score_events",
    "serialize_sessions",
    "snap_to_shots",
    "text_intersect",
    "tokenize_lemmatize",
    "top_k_events",
    "v2_pipeline",
]
