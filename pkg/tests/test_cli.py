"""CLI wiring: subcommands, exit codes, deterministic outputs."""

import json
from importlib import resources

from peakcut.cli import main


def run(argv):
    return main(argv)


def test_usage_error_exits_1(capsys):
    assert run(["v1"]) == 1
    assert "usage" in capsys.readouterr().err.lower()


def test_unknown_command_exits_1(capsys):
    assert run(["frobnicate"]) == 1


def test_missing_file_exits_2(tmp_path, capsys):
    out = tmp_path / "out.jsonl"
    code = run(["ingest", "--sessions", str(tmp_path / "nope.jsonl"), "--out", str(out)])
    assert code == 2


def test_ingest_writes_normalized_sessions_and_report(tmp_path, demo_files):
    out = tmp_path / "normalized.jsonl"
    report = tmp_path / "report.jsonl"
    code = run(
        ["ingest", "--sessions", str(demo_files["sessions"]), "--out", str(out), "--report", str(report)]
    )
    assert code == 0
    assert out.read_text().count("\n") > 100
    assert report.read_text() == ""


def test_timeline_emits_json_and_csv(tmp_path, demo_files):
    out = tmp_path / "tl.json"
    csv_out = tmp_path / "tl.csv"
    code = run(
        [
            "timeline",
            "--sessions", str(demo_files["sessions"]),
            "--asset", str(demo_files["asset"]),
            "--bin", "1", "--window", "15",
            "--out", str(out),
            "--csv", str(csv_out),
        ]
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["asset_id"] == "demo"
    assert len(doc["raw"]) == 600
    assert csv_out.read_text().splitlines()[0] == "bin_start_s,raw,normalized"


def test_v1_writes_reel_and_concat(tmp_path, demo_files):
    out = tmp_path / "reel.json"
    code = run(
        [
            "v1",
            "--sessions", str(demo_files["sessions"]),
            "--asset", str(demo_files["asset"]),
            "--meta", str(demo_files["meta"]),
            "--k", "2.5", "--bin", "1", "--window", "1", "--min-len", "15",
            "--out", str(out),
        ]
    )
    assert code == 0
    reel = json.loads(out.read_text())
    assert reel["clips"], "expected at least one clip around the planted interval"
    clip = reel["clips"][0]
    assert 270 <= clip["start"] <= 300 and 330 <= clip["end"] <= 360
    concat = (tmp_path / "reel.concat.txt").read_text()
    assert concat.startswith("demo\t")


def test_v1_is_byte_deterministic(tmp_path, demo_files):
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert run(
            [
                "v1",
                "--sessions", str(demo_files["sessions"]),
                "--asset", str(demo_files["asset"]),
                "--meta", str(demo_files["meta"]),
                "--k", "2.5", "--bin", "1", "--window", "1",
                "--out", str(out),
            ]
        ) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_v2_top_k_reel(tmp_path, demo_files):
    out = tmp_path / "reel2.json"
    code = run(
        [
            "v2",
            "--sessions", str(demo_files["sessions"]),
            "--asset", str(demo_files["asset"]),
            "--meta", str(demo_files["meta"]),
            "--events", str(demo_files["events"]),
            "--bin", "1", "--window", "1",
            "--top", "3",
            "--out", str(out),
        ]
    )
    assert code == 0
    reel = json.loads(out.read_text())
    assert len(reel["clips"]) == 3
    assert reel["provenance"]["pipeline"] == "v2"
    # The planted interval [300, 330) lies in event p5 = [300, 360).
    assert any(c["start"] <= 300 < c["end"] for c in reel["clips"])


def test_cohorts_outputs_two_timelines(tmp_path, demo_files):
    out = tmp_path / "cohorts.json"
    code = run(
        [
            "cohorts",
            "--sessions", str(demo_files["sessions"]),
            "--asset", str(demo_files["asset"]),
            "--out", str(out),
        ]
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert set(doc) == {"early", "late"}
    assert len(doc["early"]["raw"]) == 600


def test_compare_reproduces_table1(tmp_path, capsys):
    matrix = tmp_path / "table1.tsv"
    matrix.write_text(
        resources.files("peakcut.data").joinpath("table1_debate.tsv").read_text("utf-8")
    )
    code = run(["compare", "--matrix", str(matrix), "--reference", "V1"])
    assert code == 0
    stats = json.loads(capsys.readouterr().out)
    assert stats["coverage_pct"] == 76.5


def test_synth_generates_sessions_and_truth(tmp_path):
    cfg = {
        "n_viewers": 30,
        "duration": 300,
        "baseline_rewatch_p": 0.05,
        "planted": [{"start": 60, "end": 90, "rewatch_p": 0.5}],
        "live_watch_p": 1.0,
        "rng_seed": 3,
    }
    cfg_path = tmp_path / "synth.json"
    cfg_path.write_text(json.dumps(cfg))
    out_sessions = tmp_path / "s.jsonl"
    out_truth = tmp_path / "truth.json"
    code = run(
        ["synth", "--config", str(cfg_path), "--out-sessions", str(out_sessions), "--out-truth", str(out_truth)]
    )
    assert code == 0
    truth = json.loads(out_truth.read_text())
    assert truth["planted"] == [{"start": 60, "end": 90, "rewatch_p": 0.5}]
    assert out_sessions.read_text().strip()

    # --seed overrides the config seed deterministically
    alt = tmp_path / "s2.jsonl"
    assert run(["synth", "--config", str(cfg_path), "--seed", "3", "--out-sessions", str(alt)]) == 0
    assert alt.read_bytes() == out_sessions.read_bytes()


def test_bad_session_data_exits_2(tmp_path, demo_files):
    bad = tmp_path / "bad.jsonl"
    bad.write_text("garbage\nmore garbage\n")
    out = tmp_path / "o.jsonl"
    assert run(["ingest", "--sessions", str(bad), "--out", str(out)]) == 2
