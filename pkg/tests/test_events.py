"""Event partition scoring and top-k selection (V2)."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from peakcut.errors import EventOutOfRange
from peakcut.events import Event, EventPartition, score_events, top_k_events, v2_pipeline
from peakcut.metadata import ShotTrack
from peakcut.timeline import RewatchTimeline


def tl(normalized, bin_s=1.0):
    normalized = np.asarray(normalized, dtype=float)
    return RewatchTimeline("a9", bin_s, 15.0, np.zeros(len(normalized)), normalized, 100)


def ev(start, end, label=""):
    return Event(start=start, end=end, label=label or f"{start}-{end}")


def test_score_is_mean_of_owned_bins():
    part = EventPartition((ev(10, 13),))
    normalized = [0.0] * 20
    normalized[10:13] = [0.2, 0.4, 0.6]
    scored = score_events(part, tl(normalized))
    assert scored[0][1] == pytest.approx(0.4)


def test_constant_series_scores_all_events_equally():
    part = EventPartition((ev(0, 5), ev(5, 11), ev(11, 20)))
    scored = score_events(part, tl([0.3] * 20))
    assert all(s == pytest.approx(0.3) for _, s in scored)


def test_short_event_scores_containing_bin():
    part = EventPartition((ev(10.0, 10.4),))
    normalized = [0.0] * 20
    normalized[10] = 0.7
    scored = score_events(part, tl(normalized))
    assert scored[0][1] == pytest.approx(0.7)


def test_zero_bin_event_scores_zero():
    part = EventPartition((ev(10.2, 10.9),))
    scored = score_events(part, tl([0.5] * 20))
    assert scored[0][1] == 0.0


def test_event_out_of_range():
    part = EventPartition((ev(10, 30),))
    with pytest.raises(EventOutOfRange):
        score_events(part, tl([0.5] * 20))


def test_top_k_selects_and_reorders_chronologically():
    scored = [(ev(0, 10), 0.1), (ev(10, 20), 0.9), (ev(20, 30), 0.5), (ev(30, 40), 0.7)]
    picks = top_k_events(scored, 2)
    assert [(p.start, p.end) for p in picks] == [(10, 20), (30, 40)]
    assert all(p.source == "v2_event" for p in picks)


def test_top_k_saturates():
    scored = [(ev(0, 10), 0.1), (ev(10, 20), 0.9)]
    assert len(top_k_events(scored, 99)) == 2


def test_top_k_tie_prefers_earlier_start():
    scored = [(ev(0, 10), 0.5), (ev(10, 20), 0.5), (ev(20, 30), 0.9)]
    picks = top_k_events(scored, 2)
    assert [p.start for p in picks] == [0, 20]


def test_v2_pipeline_recovers_planted_events():
    events = tuple(ev(i * 10, (i + 1) * 10, f"p{i}") for i in range(10))
    normalized = np.full(100, 0.05)
    for hot in (2, 5, 7):  # plant three high-interest events
        normalized[hot * 10 : (hot + 1) * 10] = 0.9
    shots = ShotTrack(tuple(float(x) for x in range(0, 101, 5)))
    picks = v2_pipeline(EventPartition(events), tl(normalized), shots, k=3)
    assert [(p.start, p.end) for p in picks] == [(20, 30), (50, 60), (70, 80)]


def test_v2_pipeline_empty_partition():
    assert v2_pipeline(EventPartition(()), tl([0.5] * 10), None, 5) == []


def test_partition_rejects_overlap_and_disorder():
    with pytest.raises(ValueError):
        EventPartition((ev(0, 10), ev(5, 15)))
    with pytest.raises(ValueError):
        EventPartition((ev(10, 20), ev(0, 5)))


@st.composite
def _scored_partitions(draw):
    n = draw(st.integers(1, 100))
    scored = []
    cursor = 0.0
    for i in range(n):
        length = draw(st.floats(1, 10))
        scored.append((ev(cursor, cursor + length, f"e{i}"), draw(st.floats(0, 1))))
        cursor += length + draw(st.floats(0, 3))
    return scored


@settings(max_examples=150, deadline=None)
@given(_scored_partitions(), st.integers(1, 20))
def test_selection_equals_bruteforce(scored, k):
    picks = top_k_events(scored, k)
    expected = sorted(scored, key=lambda es: (-es[1], es[0].start))[: min(k, len(scored))]
    expected_ids = sorted((e.start, e.end) for e, _ in expected)
    assert sorted((p.start, p.end) for p in picks) == expected_ids
    assert [p.start for p in picks] == sorted(p.start for p in picks)


@settings(max_examples=50, deadline=None)
@given(_scored_partitions(), st.integers(1, 10), st.floats(0.1, 7))
def test_ranking_scale_invariant(scored, k, c):
    base = {(p.start, p.end) for p in top_k_events(scored, k)}
    scaled = {(p.start, p.end) for p in top_k_events([(e, s * c) for e, s in scored], k)}
    assert base == scaled


@settings(max_examples=50, deadline=None)
@given(_scored_partitions(), st.integers(1, 10))
def test_below_cut_addition_never_changes_selection(scored, k):
    picks = top_k_events(scored, k)
    if len(scored) < k:
        return
    cut = min(p.score for p in picks)
    tail = max(e.end for e, _ in scored)
    extra = (ev(tail + 5, tail + 6, "extra"), max(0.0, cut - 0.25))
    if extra[1] >= cut:
        return
    again = top_k_events(scored + [extra], k)
    assert [(p.start, p.end) for p in again] == [(p.start, p.end) for p in picks]
