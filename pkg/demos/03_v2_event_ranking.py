#!/usr/bin/env python3
"""The V2 (events) pipeline: rank an external partition by mean rewatch.

A tennis-style point partition is scored by the mean normalized rewatch of
each point's seconds; the top points become the reel, chronologically. The
planted rewatch hotspots should lift exactly their containing points.
"""

from peakcut.events import EventPartition, score_events, top_k_events
from peakcut.pipeline import CurationConfig, compute_timeline
from peakcut.synth import PlantedInterval, SynthConfig, generate_sessions, synth_asset

cfg = SynthConfig(
    n_viewers=1500,
    duration=930.0,
    baseline_rewatch_p=0.02,
    planted=(
        PlantedInterval(150.0, 180.0, 0.30),
        PlantedInterval(600.0, 630.0, 0.35),
        PlantedInterval(870.0, 900.0, 0.40),  # the match-ending point
    ),
    live_watch_p=0.9,
    rng_seed=21,
)
sessions, _ = generate_sessions(cfg, asset_id="final")
asset = synth_asset(cfg, asset_id="final")
tl = compute_timeline(sessions, asset, CurationConfig(bin_s=1.0, window_s=1.0))

# 31 "points" of 30 s each, labeled like a score progression.
points = EventPartition.from_dict(
    {
        "events": [
            {"start": float(t), "end": float(t + 30), "label": f"point-{i + 1}"}
            for i, t in enumerate(range(0, 930, 30))
        ]
    }
)

scored = score_events(points, tl)
print("top of the score table:")
for ev, score in sorted(scored, key=lambda es: -es[1])[:5]:
    print(f"  {ev.label:10s} [{ev.start:6.0f}, {ev.end:6.0f})  {score:.3f}")

picks = top_k_events(scored, k=3)
print("\nselected clips (chronological):")
for p in picks:
    print(f"  {sorted(p.labels)[0]:10s} [{p.start:6.0f}, {p.end:6.0f})  score {p.score:.3f}")

expected = {"point-6", "point-21", "point-30"}
got = {sorted(p.labels)[0] for p in picks}
print(f"\nplanted points recovered: {got == expected} ({sorted(got)})")
