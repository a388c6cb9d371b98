"""Cross-summary agreement evaluation: token containment, caption overlap, comparison matrices."""

from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources

from .errors import MethodMissing, UnknownSource
from .metadata import CaptionCue

log = logging.getLogger(__name__)

_WORD = re.compile(r"[a-z0-9]+")
_VOWELS_NO_E = "aiou"


def _load_stopwords() -> frozenset[str]:
    text = resources.files("peakcut.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(
        w.strip() for w in text.splitlines() if w.strip() and not w.startswith("#")
    )


STOPWORDS = _load_stopwords()


def _stem_once(tok: str) -> str:
    if tok.endswith("ies") and len(tok) > 3:
        return tok[:-3] + "y"
    if tok.endswith("sses"):
        return tok[:-2]
    if tok.endswith("ing") and len(tok) - 3 >= 3:
        stem = tok[:-3]
        return stem + "e" if stem[-1] in _VOWELS_NO_E else stem
    if tok.endswith("ed") and len(tok) - 2 >= 3:
        stem = tok[:-2]
        return stem + "e" if stem[-1] in _VOWELS_NO_E else stem
    if tok.endswith("s") and not tok.endswith("ss"):
        return tok[:-1]
    return tok


def _stem(tok: str) -> str:
    # Iterate to a fixpoint so stemming is idempotent ("meetings" -> "meeting" -> "meet").
    while True:
        out = _stem_once(tok)
        if out == tok:
            return out
        tok = out


def tokenize_lemmatize(text: str) -> Counter:
    """Lowercased, stopword-free, suffix-stripped token multiset.

    The stripper is a small fixed rule set (ies->y, sses->ss, ing/ed when the
    stem keeps 3+ chars with a vowel restored, plural s), applied to a
    fixpoint; it trades linguistic fidelity for determinism.
    """
    counts: Counter = Counter()
    for tok in _WORD.findall(text.lower()):
        if tok in STOPWORDS:
            continue
        stem = _stem(tok)
        if stem in STOPWORDS:
            continue
        counts[stem] += 1
    return counts


@dataclass
class ClipAnnotation:
    """A clip of some highlight video, identified by key, with description and/or captions."""

    key: str
    description: str = ""
    interval: tuple[float, float] | None = None
    captions: list[CaptionCue] = field(default_factory=list)

    def __post_init__(self):
        if self.interval is not None and self.interval[1] <= self.interval[0]:
            raise ValueError(f"bad clip interval {self.interval}")


def text_intersect(clip: ClipAnnotation, partition_text: str) -> bool:
    """True iff every distinct clip-annotation lemma appears in the partition text."""
    clip_tokens = set(tokenize_lemmatize(clip.description))
    if not clip_tokens:
        log.warning("clip %s has an empty description; containment is vacuously true", clip.key)
        return True
    return clip_tokens <= set(tokenize_lemmatize(partition_text))


def caption_overlap_seconds(a: list[CaptionCue], b: list[CaptionCue]) -> float:
    """Seconds of caption material shared by two clips.

    Cues pair greedily in order by equal normalized text (each cue used at
    most once); every matched pair credits the shorter cue's duration, which
    makes the measure symmetric.
    """

    def grouped(cues):
        groups: dict[tuple, list[CaptionCue]] = {}
        for cue in cues:
            key = tuple(sorted(tokenize_lemmatize(cue.text).items()))
            groups.setdefault(key, []).append(cue)
        return groups

    ga, gb = grouped(a), grouped(b)
    total = 0.0
    for key, cues_a in ga.items():
        cues_b = gb.get(key)
        if not cues_b:
            continue
        for cue_a, cue_b in zip(cues_a, cues_b):
            total += min(cue_a.duration, cue_b.duration)
    return total


def captions_intersect(a: ClipAnnotation, b: ClipAnnotation, threshold: float = 10.0) -> bool:
    """Clip-level intersection for video summaries: >= threshold seconds of shared captions."""
    return caption_overlap_seconds(a.captions, b.captions) >= threshold


@dataclass
class SourceCorpus:
    """One summary's material: text partitions or caption-annotated clips."""

    source: str
    method: str  # "text" | "caption"
    partitions: list[dict] = field(default_factory=list)  # [{"id":..., "text":...}]
    clips: list[ClipAnnotation] = field(default_factory=list)

    @classmethod
    def from_dict(cls, d: dict) -> "SourceCorpus":
        clips = [
            ClipAnnotation(
                key=str(c.get("id", i)),
                description=c.get("description", ""),
                captions=[
                    CaptionCue(float(q["start"]), float(q["end"]), str(q["text"]))
                    for q in c.get("captions", [])
                ],
            )
            for i, c in enumerate(d.get("clips", []))
        ]
        return cls(
            source=d["source"],
            method=d.get("method", ""),
            partitions=list(d.get("partitions", [])),
            clips=clips,
        )


@dataclass
class ComparisonMatrix:
    """Presence grid: rows are reference clip keys, columns are summary sources."""

    keys: list[str]
    sources: list[str]
    present: dict[tuple[str, str], bool]

    def cell(self, key: str, source: str) -> bool:
        return self.present.get((key, source), False)

    def column(self, source: str) -> list[bool]:
        if source not in self.sources:
            raise UnknownSource(f"unknown source {source!r}")
        return [self.cell(k, source) for k in self.keys]

    def to_tsv(self) -> str:
        lines = ["key\t" + "\t".join(self.sources)]
        for k in self.keys:
            cells = ["Y" if self.cell(k, s) else "" for s in self.sources]
            lines.append(k + "\t" + "\t".join(cells))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str) -> "ComparisonMatrix":
        rows = [line.split("\t") for line in text.splitlines() if line.strip()]
        header = rows[0]
        sources = header[1:]
        keys = []
        present = {}
        for row in rows[1:]:
            key = row[0]
            keys.append(key)
            for source, cell in zip(sources, row[1:]):
                present[(key, source)] = cell.strip().upper() == "Y"
        return cls(keys=keys, sources=sources, present=present)


def build_matrix(
    reference_clips: list[ClipAnnotation],
    corpora: list[SourceCorpus],
    caption_threshold: float = 10.0,
) -> ComparisonMatrix:
    """Intersect every reference clip with every source per that source's declared method."""
    keys = [c.key for c in reference_clips]
    sources = [c.source for c in corpora]
    present: dict[tuple[str, str], bool] = {}
    for corpus in corpora:
        for clip in reference_clips:
            if corpus.method == "text":
                hit = any(text_intersect(clip, p.get("text", "")) for p in corpus.partitions)
            elif corpus.method == "caption":
                hit = any(
                    captions_intersect(clip, other, caption_threshold) for other in corpus.clips
                )
            else:
                raise MethodMissing(f"source {corpus.source!r} declares no intersection method")
            present[(clip.key, corpus.source)] = hit
    return ComparisonMatrix(keys=keys, sources=sources, present=present)


def agreement_stats(matrix: ComparisonMatrix, reference: str) -> dict:
    """Coverage of the reference summary by the others, plus pairwise intersections.

    coverage_pct is rounded to one decimal; missed_keys are clips some other
    summary picked that the reference did not.
    """
    if reference not in matrix.sources:
        raise UnknownSource(f"unknown reference source {reference!r}")
    others = [s for s in matrix.sources if s != reference]
    ref_rows = [k for k in matrix.keys if matrix.cell(k, reference)]
    covered = [k for k in ref_rows if any(matrix.cell(k, s) for s in others)]
    pairwise = {
        s: sum(1 for k in ref_rows if matrix.cell(k, s)) for s in others
    }
    missed = [
        k
        for k in matrix.keys
        if not matrix.cell(k, reference) and any(matrix.cell(k, s) for s in others)
    ]
    ref_count = len(ref_rows)
    return {
        "reference": reference,
        "ref_count": ref_count,
        "covered_count": len(covered),
        "coverage_pct": round(100.0 * len(covered) / ref_count, 1) if ref_count else 0.0,
        "pairwise": pairwise,
        "missed_keys": missed,
    }
