#!/usr/bin/env python3
"""Agreement between an automated reel and human-curated summaries.

The shipped TSV grids record, for two broadcast case studies, which clips
of each summary contain each reference moment. We recompute the agreement
statistics, and also show the underlying intersection primitives (token
containment for articles, caption overlap for videos) on small examples.
"""

from importlib import resources

from peakcut.compare import (
    ClipAnnotation,
    ComparisonMatrix,
    agreement_stats,
    caption_overlap_seconds,
    text_intersect,
    tokenize_lemmatize,
)
from peakcut.metadata import CaptionCue


def fixture(name):
    return resources.files("peakcut.data").joinpath(name).read_text("utf-8")


print("=== debate case study ===")
table1 = ComparisonMatrix.from_tsv(fixture("table1_debate.tsv"))
stats = agreement_stats(table1, "V1")
print(f"reference clips: {stats['ref_count']}")
print(f"covered by at least one other summary: {stats['covered_count']} ({stats['coverage_pct']}%)")
print(f"clips other summaries had that the reference missed: {stats['missed_keys']}")
print(f"pairwise intersections: {stats['pairwise']}")

print("\n=== tennis final case study ===")
table2 = ComparisonMatrix.from_tsv(fixture("table2_wimbledon.tsv"))
stats2 = agreement_stats(table2, "V1")
print(f"reference clips: {stats2['ref_count']}, pairwise: {stats2['pairwise']}")
print(f"event-ranked summary size: {sum(table2.column('V2'))}")
print(f"match-ending point picked by every summary: {all(table2.cell('23', s) for s in table2.sources)}")

print("\n=== intersection primitives ===")
clip = ClipAnnotation(key="9", description="Warren on billionaire donors")
article = "Ms. Warren went after billionaires and their donor class for most of a minute."
print(f"tokens of the clip note: {sorted(tokenize_lemmatize(clip.description))}")
print(f"text containment vs article: {text_intersect(clip, article)}")

ours = [CaptionCue(0, 6, "they're just wrong"), CaptionCue(6, 12, "big structural change")]
theirs = [CaptionCue(40, 46, "they're just wrong"), CaptionCue(46, 52, "big structural change")]
print(f"caption overlap: {caption_overlap_seconds(ours, theirs):.0f}s (>= 10 s counts as the same clip)")
