"""IQR seed detection vs the independent quantile oracle, and run grouping."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from peakcut.detect import IqrConfig, detect_seed_bins, group_seed_segments
from peakcut.errors import EmptySeries
from peakcut.synth import brute_force_quantile


def oracle_flags(values, k=1.5):
    q1 = brute_force_quantile(values, 0.25)
    q3 = brute_force_quantile(values, 0.75)
    fence = q3 + k * (q3 - q1)
    return [v > fence for v in values]


def test_single_spike_over_flat_base():
    # Q1 = Q3 = 0.1 so the fence is 0.1; only the 0.9 bin exceeds it.
    series = [0.1] * 10 + [0.9]
    flags = detect_seed_bins(np.array(series))
    assert flags.tolist() == [False] * 10 + [True]
    assert flags.tolist() == oracle_flags(series)


def test_constant_series_flags_nothing():
    assert not detect_seed_bins(np.full(20, 0.4)).any()


def test_known_quartiles_fence():
    # Sorted already: Q1 = 2, Q3 = 4, fence = 4 + 1.5 * 2 = 7.
    series = [1, 2, 3, 4, 100]
    flags = detect_seed_bins(series)
    assert flags.tolist() == [False, False, False, False, True]
    assert brute_force_quantile(series, 0.75) == 4


def test_empty_series_rejected():
    with pytest.raises(EmptySeries):
        detect_seed_bins([])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0, 1, allow_nan=False), min_size=1, max_size=200))
def test_matches_bruteforce_oracle(series):
    flags = detect_seed_bins(np.array(series))
    assert flags.tolist() == oracle_flags(series)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(
        st.fractions(min_value=0, max_value=1, max_denominator=64),
        min_size=1,
        max_size=40,
    ),
    st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=16),
    st.fractions(min_value=-4, max_value=4, max_denominator=16),
)
def test_affine_invariance_exact_on_rationals(series, a, b):
    base = detect_seed_bins(series)
    shifted = detect_seed_bins([a * v + b for v in series])
    assert base == shifted


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.floats(0, 1, allow_nan=False), min_size=1, max_size=100),
    st.floats(0, 3),
    st.floats(0, 3),
)
def test_monotone_in_k(series, k_a, k_b):
    lo, hi = sorted((k_a, k_b))
    flagged_hi = detect_seed_bins(np.array(series), IqrConfig(k=hi))
    flagged_lo = detect_seed_bins(np.array(series), IqrConfig(k=lo))
    assert np.all(flagged_lo | ~flagged_hi)  # flagged(hi) subset of flagged(lo)


def test_grouping_empty_mask():
    assert group_seed_segments([False] * 5, 1.0, [0.0] * 5) == []


def test_grouping_runs_match_shot_cover_schematic():
    # Runs at bins {3,4} and {8,9,10} become [3,5) and [8,11).
    mask = [False] * 11
    values = [0.0] * 11
    for i in (3, 4, 8, 9, 10):
        mask[i] = True
        values[i] = 0.8
    segs = group_seed_segments(mask, 1.0, values)
    assert [(s.start, s.end) for s in segs] == [(3.0, 5.0), (8.0, 11.0)]
    assert all(s.source == "v1_seed" for s in segs)
    assert segs[0].score == pytest.approx(0.8)


def test_grouping_scales_by_bin():
    mask = [False] * 8
    mask[7] = True
    segs = group_seed_segments(mask, 2.0, [0.0] * 7 + [1.0])
    assert [(s.start, s.end) for s in segs] == [(14.0, 16.0)]


def test_grouping_scores_are_run_means():
    mask = [True, True, False, True]
    values = [0.2, 0.4, 0.0, 1.0]
    segs = group_seed_segments(mask, 1.0, values)
    assert segs[0].score == pytest.approx(0.3)
    assert segs[1].score == pytest.approx(1.0)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.booleans(), min_size=1, max_size=60))
def test_grouping_partition_property(mask):
    values = [0.5] * len(mask)
    segs = group_seed_segments(mask, 1.0, values)
    covered = set()
    for s in segs:
        covered |= set(range(int(s.start), int(s.end)))
    assert covered == {i for i, m in enumerate(mask) if m}
    for a, b in zip(segs, segs[1:]):
        assert b.start > a.end  # maximal: no two adjacent runs
