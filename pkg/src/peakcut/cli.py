"""Command-line frontdoor: ingest, timeline, cohorts, v1, v2, compare, synth, serve.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .compare import ComparisonMatrix, agreement_stats
from .errors import PeakcutError
from .events import EventPartition
from .metadata import MetadataTrack
from .pipeline import CurationConfig, build_reel, compute_timeline, run_curation
from .reel import ExternalClip, export_cutlist
from .sessions import AssetInfo, CohortWindows, cohort_split, parse_sessions, serialize_sessions
from .synth import SynthConfig, generate_sessions
from .timeline import cohort_timelines


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(path: str, data) -> None:
    if isinstance(data, bytes):
        Path(path).write_bytes(data)
    else:
        Path(path).write_text(data, encoding="utf-8")


def _load_asset(path: str) -> AssetInfo:
    d = json.loads(_read(path))
    return AssetInfo(asset_id=d["asset_id"], air_start=float(d["air_start"]), duration=float(d["duration"]))


def _load_sessions(path: str, fmt: str, abort_threshold: float = 0.10):
    return parse_sessions(_read(path), fmt, abort_threshold)


def _session_flags(p: _Parser) -> None:
    p.add_argument("--sessions", required=True, help="session log file")
    p.add_argument("--format", default="jsonl", choices=["jsonl", "csv"], help="session log format")
    p.add_argument("--asset", required=True, help="asset info JSON (asset_id, air_start, duration)")


def _config_flags(p: _Parser, pipeline: str) -> None:
    p.add_argument("--bin", type=float, default=1.0, help="timeline bin seconds")
    p.add_argument("--window", type=float, default=15.0, help="scored window seconds")
    p.add_argument("--min-watch", type=float, default=0.0, help="viewer base minimum watched seconds")
    p.add_argument("--require-replay", action="store_true", help="viewer base must contain a replay")
    p.add_argument("--cohort", default="all", choices=["all", "early", "late"])
    if pipeline == "v1":
        p.add_argument("--k", type=float, default=1.5, help="IQR fence multiplier")
        p.add_argument("--merge-gap", type=float, default=5.0)
        p.add_argument("--min-len", type=float, default=15.0)
        p.add_argument("--snap-mode", default="shot_cover", choices=["shot_cover", "nearest_boundary", "none"])
        p.add_argument("--tag-expr", default=None, help="personalization tag expression")
        p.add_argument("--tag-min-overlap", type=float, default=0.0)
        p.add_argument("--budget", type=float, default=None, help="max total reel seconds")
    else:
        p.add_argument("--top", type=int, default=15, help="number of events to keep")


def _reel_flags(p: _Parser) -> None:
    p.add_argument("--header-uri", default=None)
    p.add_argument("--header-duration", type=float, default=0.0)
    p.add_argument("--bumper-uri", action="append", default=[], help="repeatable bumper clip URI")
    p.add_argument("--bumper-policy", default="between_all", choices=["between_all", "between_none", "every_n"])
    p.add_argument("--every-n", type=int, default=None)
    p.add_argument("--out", required=True, help="reel JSON output path (concat txt written alongside)")


def build_parser() -> _Parser:
    parser = _Parser(prog="peakcut", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)

    p = sub.add_parser("ingest", help="parse and validate a session log")
    p.add_argument("--sessions", required=True)
    p.add_argument("--format", default="jsonl", choices=["jsonl", "csv"])
    p.add_argument("--abort-threshold", type=float, default=0.10)
    p.add_argument("--out", required=True, help="normalized session JSONL output")
    p.add_argument("--report", default=None, help="parse report JSONL output")

    p = sub.add_parser("timeline", help="compute and normalize the rewatch timeline")
    _session_flags(p)
    _config_flags(p, "v1")
    p.add_argument("--out", required=True, help="timeline JSON output")
    p.add_argument("--csv", default=None, help="optional plot-ready CSV output")

    p = sub.add_parser("cohorts", help="early/late cohort timelines")
    _session_flags(p)
    p.add_argument("--bin", type=float, default=1.0)
    p.add_argument("--window", type=float, default=15.0)
    p.add_argument("--early", default="0,12", help="early window hours lo,hi")
    p.add_argument("--late", default="24,48", help="late window hours lo,hi")
    p.add_argument("--out", required=True, help="JSON with early and late timelines")

    p = sub.add_parser("v1", help="seed detection pipeline to a highlight reel")
    _session_flags(p)
    p.add_argument("--meta", required=True, help="metadata JSON (shots, tags, captions)")
    _config_flags(p, "v1")
    _reel_flags(p)

    p = sub.add_parser("v2", help="event-ranking pipeline to a highlight reel")
    _session_flags(p)
    p.add_argument("--meta", default=None, help="metadata JSON (shots used for smoothing)")
    p.add_argument("--events", required=True, help="event partition JSON")
    _config_flags(p, "v2")
    _reel_flags(p)

    p = sub.add_parser("compare", help="agreement statistics over a comparison matrix")
    p.add_argument("--matrix", required=True, help="TSV matrix (key column + one column per source)")
    p.add_argument("--reference", required=True)
    p.add_argument("--out", default=None, help="stats JSON output (default stdout)")

    p = sub.add_parser("synth", help="generate a synthetic session population")
    p.add_argument("--config", required=True, help="synth config JSON")
    p.add_argument("--seed", type=int, default=None, help="override the config rng_seed")
    p.add_argument("--out-sessions", required=True)
    p.add_argument("--out-truth", default=None)

    p = sub.add_parser("serve", help="start the curation service")
    p.add_argument("--port", type=int, default=8700)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data-dir", default=None, help="persistence root (default $PEAKCUT_DATA_DIR or ./peakcut-data)")
    p.add_argument("--ui", default=None, help="serve the curator console from this directory at /ui")

    return parser


def _cfg_from_args(args, pipeline: str) -> CurationConfig:
    common = dict(
        pipeline=pipeline,
        bin_s=args.bin,
        window_s=args.window,
        min_watch=args.min_watch,
        require_replay=args.require_replay,
        cohort=args.cohort,
    )
    if pipeline == "v1":
        return CurationConfig(
            k=args.k,
            merge_gap=args.merge_gap,
            min_len=args.min_len,
            snap_mode=args.snap_mode,
            tag_expr=args.tag_expr,
            tag_min_overlap=args.tag_min_overlap,
            max_total=args.budget,
            **common,
        )
    return CurationConfig(top_k=args.top, **common)


def _cmd_ingest(args) -> int:
    result = _load_sessions(args.sessions, args.format, args.abort_threshold)
    _write(args.out, serialize_sessions(result.sessions))
    if args.report:
        _write(args.report, result.report_jsonl())
    print(f"ingested {len(result.sessions)} sessions, {len(result.report)} lines skipped")
    return 0


def _cmd_timeline(args) -> int:
    sessions = _load_sessions(args.sessions, args.format).sessions
    asset = _load_asset(args.asset)
    cfg = _cfg_from_args(args, "v1")
    tl = compute_timeline(sessions, asset, cfg)
    _write(args.out, tl.to_json() + "\n")
    if args.csv:
        _write(args.csv, tl.to_csv())
    return 0


def _cmd_cohorts(args) -> int:
    sessions = _load_sessions(args.sessions, args.format).sessions
    asset = _load_asset(args.asset)
    early_h = tuple(float(x) for x in args.early.split(","))
    late_h = tuple(float(x) for x in args.late.split(","))
    early, late = cohort_split(sessions, asset, CohortWindows(early=early_h, late=late_h))
    e_tl, l_tl = cohort_timelines(early, late, asset, args.bin, args.window)
    doc = {"early": e_tl.to_dict(), "late": l_tl.to_dict()}
    _write(args.out, json.dumps(doc, sort_keys=True) + "\n")
    print(f"early cohort {len(early)} viewers, late cohort {len(late)} viewers")
    return 0


def _run_reel(args, pipeline: str) -> int:
    sessions = _load_sessions(args.sessions, args.format).sessions
    asset = _load_asset(args.asset)
    meta = MetadataTrack.from_json(_read(args.meta)) if args.meta else MetadataTrack()
    events = None
    if pipeline == "v2":
        events = EventPartition.from_json(_read(args.events))
    cfg = _cfg_from_args(args, pipeline)
    result = run_curation(sessions, asset, meta, cfg, events=events)
    header = ExternalClip(args.header_uri, args.header_duration) if args.header_uri else None
    bumpers = [ExternalClip(uri) for uri in args.bumper_uri]
    reel = build_reel(
        result.proposals,
        asset,
        result.timeline,
        cfg,
        header=header,
        bumpers=bumpers,
        bumper_policy=args.bumper_policy,
        every_n=args.every_n,
    )
    _write(args.out, export_cutlist(reel, "json"))
    concat_path = str(Path(args.out).with_suffix("")) + ".concat.txt"
    _write(concat_path, export_cutlist(reel, "concat_txt"))
    print(f"{pipeline}: {len(reel.clips)} clips -> {args.out}, {concat_path}")
    return 0


def _cmd_compare(args) -> int:
    matrix = ComparisonMatrix.from_tsv(_read(args.matrix))
    stats = agreement_stats(matrix, args.reference)
    text = json.dumps(stats, sort_keys=True, indent=2) + "\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_synth(args) -> int:
    cfg = SynthConfig.from_dict(json.loads(_read(args.config)))
    if args.seed is not None:
        cfg = SynthConfig.from_dict({**cfg.to_dict(), "rng_seed": args.seed})
    sessions, truth = generate_sessions(cfg)
    _write(args.out_sessions, serialize_sessions(sessions))
    if args.out_truth:
        _write(args.out_truth, json.dumps(truth, sort_keys=True) + "\n")
    print(f"generated {len(sessions)} sessions")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app, default_data_dir

    app = create_app(
        Path(args.data_dir) if args.data_dir else default_data_dir(),
        ui_dir=Path(args.ui) if args.ui else None,
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "timeline": _cmd_timeline,
    "cohorts": _cmd_cohorts,
    "v1": lambda args: _run_reel(args, "v1"),
    "v2": lambda args: _run_reel(args, "v2"),
    "compare": _cmd_compare,
    "synth": _cmd_synth,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if not args.command:
        print(parser.format_usage(), file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (PeakcutError, FileNotFoundError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
