#!/usr/bin/env python3
"""The V1 (content) pipeline end to end.

Peak bins are flagged with the one-sided IQR fence, grouped into seed
segments, merged/expanded by the empirical rules, snapped to whole shots,
and assembled into a highlight reel exported as a cut list.
"""

from peakcut.detect import IqrConfig, detect_seed_bins, group_seed_segments
from peakcut.metadata import ShotTrack
from peakcut.pipeline import CurationConfig, build_reel, compute_timeline
from peakcut.reel import ExternalClip, export_cutlist
from peakcut.refine import RefineConfig, refine_segments
from peakcut.synth import PlantedInterval, SynthConfig, generate_sessions, synth_asset

cfg = SynthConfig(
    n_viewers=1500,
    duration=900.0,
    baseline_rewatch_p=0.02,
    planted=(
        PlantedInterval(120.0, 150.0, 0.30),
        PlantedInterval(450.0, 465.0, 0.25),
        PlantedInterval(780.0, 810.0, 0.35),
    ),
    live_watch_p=0.9,
    rng_seed=13,
)
sessions, _ = generate_sessions(cfg, asset_id="match")
asset = synth_asset(cfg, asset_id="match")

run_cfg = CurationConfig(bin_s=1.0, window_s=1.0, k=2.5)
tl = compute_timeline(sessions, asset, run_cfg)

mask = detect_seed_bins(tl.normalized, IqrConfig(k=2.5))
seeds = group_seed_segments(mask, tl.bin, tl.normalized)
print(f"{int(mask.sum())} bins above the fence -> {len(seeds)} seed segments")
for s in seeds:
    print(f"  seed [{s.start:7.1f}, {s.end:7.1f})  score {s.score:.2f}")

# 25 s shots; the reel should cover whole shots around each seed.
shots = ShotTrack(tuple(float(b) for b in range(0, 901, 25)))
refined = refine_segments(seeds, RefineConfig(merge_gap=5, min_len=15), shots, asset.duration)
print(f"\nafter merge/expand/snap: {len(refined)} clips")
for s in refined:
    print(f"  clip [{s.start:7.1f}, {s.end:7.1f})  score {s.score:.2f}")

reel = build_reel(
    refined,
    asset,
    tl,
    run_cfg,
    header=ExternalClip("s3://branding/intro.mp4", 4.0),
    bumpers=[ExternalClip("s3://branding/sting.mp4", 1.5)],
)
print("\nconcat cut list:")
print(export_cutlist(reel, "concat_txt").decode(), end="")
