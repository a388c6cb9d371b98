"""Acceptance suite: one test per release criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion lines.
"""

import time
from fractions import Fraction
from importlib import resources

import numpy as np
from fastapi.testclient import TestClient

from peakcut.cli import main as cli_main
from peakcut.compare import ComparisonMatrix, agreement_stats
from peakcut.detect import detect_seed_bins
from peakcut.events import Event, top_k_events
from peakcut.metadata import ShotTrack
from peakcut.pipeline import CurationConfig, compute_timeline, v1_pre_snap, v1_seeds
from peakcut.refine import expand_short, merge_close, snap_to_shots
from peakcut.segments import Segment
from peakcut.service import create_app
from peakcut.sessions import AssetInfo, CohortWindows, PlayInterval, ViewSession, cohort_split
from peakcut.synth import (
    PlantedInterval,
    SynthConfig,
    brute_force_quantile,
    generate_sessions,
    recovery_report,
    synth_asset,
)
from peakcut.timeline import RewatchTimeline, normalize


def _report(name, ok, elapsed=None, detail=""):
    status = "PASS" if ok else "FAIL"
    timing = f" ({elapsed:.3f}s)" if elapsed is not None else ""
    suffix = f" {detail}" if detail else ""
    print(f"[ACCEPTANCE] {name}: {status}{timing}{suffix}")


def _fixture(name):
    return resources.files("peakcut.data").joinpath(name).read_text("utf-8")


def test_c1_table1_reproduction():
    t0 = time.perf_counter()
    matrix = ComparisonMatrix.from_tsv(_fixture("table1_debate.tsv"))
    stats = agreement_stats(matrix, "V1")
    elapsed = time.perf_counter() - t0
    ok = (
        stats["ref_count"] == 17
        and stats["covered_count"] == 13
        and stats["coverage_pct"] == 76.5
        and stats["missed_keys"] == ["15", "16"]
        and elapsed < 1.0
    )
    _report("C1 table1-reproduction", ok, elapsed)
    assert ok, stats


def test_c2_table2_reproduction():
    t0 = time.perf_counter()
    matrix = ComparisonMatrix.from_tsv(_fixture("table2_wimbledon.tsv"))
    stats = agreement_stats(matrix, "V1")
    v2_count = sum(matrix.column("V2"))
    key23_all = all(matrix.cell("23", s) for s in matrix.sources)
    elapsed = time.perf_counter() - t0
    ok = (
        stats["ref_count"] == 10
        and v2_count == 15
        and stats["pairwise"] == {"ESPN": 7, "V2": 9}
        and key23_all
        and elapsed < 1.0
    )
    _report("C2 table2-reproduction", ok, elapsed)
    assert ok, (stats, v2_count, key23_all)


def _random_scored_partition(rng, n):
    scored = []
    cursor = 0.0
    for i in range(n):
        length = float(rng.uniform(1, 10))
        scored.append((Event(cursor, cursor + length, f"e{i}"), float(rng.random())))
        cursor += length + float(rng.uniform(0, 2))
    return scored


def test_c3_v2_cardinality_and_selection_oracle():
    rng = np.random.default_rng(202)
    # n = 93, k = 15: exactly 15 chronological clips.
    base = _random_scored_partition(rng, 93)
    picks = top_k_events(base, 15)
    ok = len(picks) == 15 and [p.start for p in picks] == sorted(p.start for p in picks)
    # Brute-force sort oracle on 1,000 random partitions (n <= 100).
    mismatches = 0
    for _ in range(1000):
        n = int(rng.integers(1, 101))
        k = int(rng.integers(1, 21))
        scored = _random_scored_partition(rng, n)
        got = top_k_events(scored, k)
        want = sorted(scored, key=lambda es: (-es[1], es[0].start))[: min(k, n)]
        want = sorted((e.start, e.end) for e, _ in want)
        if sorted((p.start, p.end) for p in got) != want:
            mismatches += 1
    ok = ok and mismatches == 0
    _report("C3 v2-cardinality+selection-oracle", ok, detail=f"mismatches={mismatches}")
    assert ok


def test_c4_synthetic_recovery():
    planted = [(600.0, 630.0), (1800.0, 1830.0), (2700.0, 2730.0)]
    cur = CurationConfig(pipeline="v1", bin_s=1.0, window_s=1.0, k=2.5)
    t0 = time.perf_counter()
    passing = 0
    for seed in range(20):
        cfg = SynthConfig(
            n_viewers=2000,
            duration=3600.0,
            baseline_rewatch_p=0.02,
            planted=tuple(PlantedInterval(a, b, 0.3) for a, b in planted),
            live_watch_p=0.85,
            rng_seed=seed,
        )
        sessions, _ = generate_sessions(cfg)
        tl = compute_timeline(sessions, synth_asset(cfg), cur)
        segments = v1_pre_snap(v1_seeds(tl, cur), tl, cur)
        rep = recovery_report(planted, segments)
        ious_ok = all(r["best_iou"] >= 0.8 for r in rep["per_interval"])
        fps_ok = not any(s.duration > 15.0 for s in rep["false_positives"])
        passing += ious_ok and fps_ok
    elapsed = time.perf_counter() - t0
    ok = passing >= 19 and elapsed < 60.0
    _report("C4 synthetic-recovery", ok, elapsed, detail=f"{passing}/20 seeds")
    assert ok, f"{passing}/20 seeds in {elapsed:.1f}s"


def test_c5_iqr_oracle_equivalence_and_affine_invariance():
    rng = np.random.default_rng(701)
    mismatches = 0
    for _ in range(1000):
        n = int(rng.integers(1, 201))
        series = rng.random(n)
        flags = detect_seed_bins(series)
        q1 = brute_force_quantile(series.tolist(), 0.25)
        q3 = brute_force_quantile(series.tolist(), 0.75)
        fence = q3 + 1.5 * (q3 - q1)
        oracle = [v > fence for v in series.tolist()]
        if flags.tolist() != oracle:
            mismatches += 1
    # Affine invariance, exact on rationals.
    affine_ok = True
    for case in range(50):
        n = int(rng.integers(1, 40))
        series = [Fraction(int(rng.integers(0, 64)), 64) for _ in range(n)]
        a = Fraction(int(rng.integers(1, 16)), int(rng.integers(1, 16)))
        b = Fraction(int(rng.integers(-32, 32)), 16)
        if detect_seed_bins(series) != detect_seed_bins([a * v + b for v in series]):
            affine_ok = False
    ok = mismatches == 0 and affine_ok
    _report(
        "C5 iqr-oracle-equivalence", ok, detail=f"mismatches={mismatches} affine_ok={affine_ok}"
    )
    assert ok


def _random_segments(rng):
    segs = []
    cursor = 0.0
    for _ in range(int(rng.integers(0, 10))):
        cursor += float(rng.uniform(0.1, 40))
        length = float(rng.uniform(0.5, 30))
        end = min(cursor + length, 400.0)
        if end <= cursor or end > 400.0:
            break
        segs.append(Segment(cursor, end, float(rng.random())))
        cursor = end
    return segs


def test_c6_refinement_invariants():
    rng = np.random.default_rng(55)
    duration = 400.0
    shots = ShotTrack(tuple(float(b) for b in range(0, 401, 20)))
    failures = 0
    for _ in range(1000):
        segs = _random_segments(rng)
        merged = merge_close(segs, 5.0)
        if merge_close(merged, 5.0) != merged:  # idempotence
            failures += 1
            continue
        expanded = expand_short(merged, 15.0, duration)
        snapped = snap_to_shots(expanded, shots, "shot_cover")
        for a, b in zip(snapped, snapped[1:]):
            if b.start < a.end:
                failures += 1
                break
        for s in snapped:
            whole_shots = (
                s.start in shots.boundaries
                and s.end in shots.boundaries
                and s.duration >= 20.0 - 1e-9
            )
            if not (0 <= s.start < s.end <= duration) or not whole_shots:
                failures += 1
                break
            if s.duration < min(15.0, 20.0) - 1e-9:
                failures += 1
                break
        # every input seed is contained in some shot_cover output
        for original in expanded:
            if not any(s.start <= original.start and original.end <= s.end for s in snapped):
                failures += 1
                break
    ok = failures == 0
    _report("C6 refinement-invariants", ok, detail=f"failures={failures}")
    assert ok


def test_c7_normalization_properties():
    rng = np.random.default_rng(99)
    ok = True
    for _ in range(200):
        n = int(rng.integers(2, 150))
        raw = rng.uniform(0, 100, n)
        if np.ptp(raw) == 0:
            continue
        tl = normalize(RewatchTimeline("a", 1.0, 15.0, raw, np.zeros(n), 100))
        v = tl.normalized
        order = np.argsort(raw, kind="stable")
        if not (
            int(np.argmax(v)) == int(np.argmax(raw))
            and np.all(np.diff(v[order]) >= 0)
            and v.max() == 1.0
            and v.min() == 0.0
        ):
            ok = False
    const = normalize(RewatchTimeline("a", 1.0, 15.0, np.full(30, 7.0), np.zeros(30), 10))
    ok = ok and not const.normalized.any()
    # V2 selection invariant under positive scaling of the normalized series.
    scored = _random_scored_partition(rng, 40)
    for c in (0.25, 3.0, 10.0):
        base = {(p.start, p.end) for p in top_k_events(scored, 10)}
        scaled = {(p.start, p.end) for p in top_k_events([(e, s * c) for e, s in scored], 10)}
        if base != scaled:
            ok = False
    _report("C7 normalization-properties", ok)
    assert ok


def test_c8_determinism_and_parity(tmp_path, demo_files):
    # CLI byte determinism across repeated runs.
    blobs = []
    for name in ("r1.json", "r2.json"):
        out = tmp_path / name
        code = cli_main(
            [
                "v1",
                "--sessions", str(demo_files["sessions"]),
                "--asset", str(demo_files["asset"]),
                "--meta", str(demo_files["meta"]),
                "--k", "2.5", "--bin", "1", "--window", "1",
                "--out", str(out),
            ]
        )
        assert code == 0
        blobs.append(out.read_bytes())
    cli_ok = blobs[0] == blobs[1]

    # Service export bytes equal CLI export bytes for the same config.
    app = create_app(tmp_path / "data")
    with TestClient(app) as client:
        resp = client.post(
            "/api/v1/assets",
            json={
                "asset": {"asset_id": "demo", "air_start": 1_600_000_000.0, "duration": 600.0},
                "sessions_path": str(demo_files["sessions"]),
                "metadata_path": str(demo_files["meta"]),
                "config": {"k": 2.5, "bin_s": 1.0, "window_s": 1.0},
            },
        )
        assert resp.status_code == 201
        service_bytes = client.post("/api/v1/assets/demo/export", params={"format": "json"}).content
    parity_ok = service_bytes == blobs[0]

    # Cohort disjointness with the default [0,12h)/[24,48h) windows.
    rng = np.random.default_rng(31)
    air = 1_600_000_000.0
    asset = AssetInfo("a", air, 3600.0)
    sessions = []
    for i in range(300):
        offset = float(rng.uniform(0, 60 * 3600))
        mode = "replay" if rng.random() < 0.8 else "live"
        sessions.append(
            ViewSession(f"v{i}", "a", [PlayInterval(0.0, 100.0, air + offset, mode)])
        )
    early, late = cohort_split(sessions, asset, CohortWindows())
    cohort_ok = not ({s.viewer_id for s in early} & {s.viewer_id for s in late})
    for s in early:
        off = (min(p.wall_start for p in s.plays if p.mode == "replay") - air) / 3600
        cohort_ok = cohort_ok and 0 <= off < 12
    for s in late:
        off = (min(p.wall_start for p in s.plays if p.mode == "replay") - air) / 3600
        cohort_ok = cohort_ok and 24 <= off < 48

    ok = cli_ok and parity_ok and cohort_ok
    _report(
        "C8 determinism+parity",
        ok,
        detail=f"cli={cli_ok} service_parity={parity_ok} cohorts={cohort_ok}",
    )
    assert ok
