"""Headless entry points: replay, gen-trace, bench, serve.

Exit codes are part of the contract: 0 success, 2 usage or input error,
1 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from pathlib import Path
from typing import Any

from .engine import (
    LATENCY_BUDGET_MS,
    REFERENCE_SPEC,
    Session,
    SessionConfig,
    generate_trace,
    open_source,
    parse_synthetic_spec,
)
from .images import encode_ppm


def load_config(path: str | None, **overrides: Any) -> SessionConfig:
    """JSON config file with flag overrides; flags win."""
    if path is None:
        config = SessionConfig()
    else:
        try:
            raw = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ValueError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ValueError(f"config {path} must hold a JSON object")
        config = SessionConfig.from_json(raw)
    return config.with_overrides(**overrides)


def _config_from_args(args: argparse.Namespace) -> SessionConfig:
    return load_config(
        args.config,
        alpha=args.alpha,
        warmup_frames=args.warmup_frames,
        threshold=args.threshold,
        min_area=args.min_area,
        gate=args.gate,
        cascade_path=args.cascade,
        ocr=args.ocr,
        ocr_text=args.ocr_text,
        ocr_cmd=args.ocr_cmd,
    )


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="session config JSON file")
    parser.add_argument("--alpha", type=float, help="background learning rate")
    parser.add_argument("--warmup-frames", type=int, dest="warmup_frames")
    parser.add_argument("--threshold", type=int, help="residual threshold")
    parser.add_argument("--min-area", type=int, dest="min_area")
    parser.add_argument("--gate", choices=["always", "cascade", "scripted"])
    parser.add_argument("--cascade", help="cascade model JSON file")
    parser.add_argument("--ocr", choices=["mock", "external"])
    parser.add_argument("--ocr-text", dest="ocr_text", help="mock backend reply")
    parser.add_argument("--ocr-cmd", dest="ocr_cmd", help="external OCR command template")


def cmd_replay(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    source = open_source(args.trace)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    session = Session(config, save_dir=out)
    stats = session.run(source)
    (out / "canvas.ppm").write_bytes(encode_ppm(session.board.render(None)))
    (out / "stats.json").write_text(json.dumps(stats.to_json(), indent=2) + "\n")
    (out / "events.json").write_text(json.dumps(session.events_json(), indent=2) + "\n")
    print(f"replayed {stats.frames} frames, mean latency {stats.mean_latency_ms:.2f} ms")
    return 0


def cmd_gen_trace(args: argparse.Namespace) -> int:
    if args.reference:
        raw = REFERENCE_SPEC
    else:
        if args.spec is None:
            raise ValueError("gen-trace needs --spec <file> or --reference")
        try:
            raw = json.loads(Path(args.spec).read_text())
        except json.JSONDecodeError as exc:
            raise ValueError(f"spec {args.spec} is not valid JSON: {exc}") from exc
    spec = parse_synthetic_spec(raw)
    out = generate_trace(spec, args.out)
    print(f"wrote {spec.frames} frames to {out}")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    if args.repeats < 1:
        raise ValueError("--repeats must be >= 1")
    config = _config_from_args(args)
    run_means = []
    for _ in range(args.repeats):
        session = Session(config)
        stats = session.run(open_source(args.trace))
        run_means.append(stats.mean_latency_ms)
        print(json.dumps(stats.to_json()))
    aggregate_mean = sum(run_means) / len(run_means)
    print(
        json.dumps(
            {
                "repeats": args.repeats,
                "mean_latency_ms": aggregate_mean,
                "latency_budget_ms": LATENCY_BUDGET_MS,
                "pass": aggregate_mean <= LATENCY_BUDGET_MS,
            }
        )
    )
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    config = _config_from_args(args)
    app = create_app(config, trace=args.trace)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="airboard", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    replay = sub.add_parser("replay", help="process a trace and write outputs")
    replay.add_argument("--trace", required=True, help="trace directory or synthetic spec file")
    replay.add_argument("--out", required=True, help="output directory")
    _add_config_flags(replay)
    replay.set_defaults(func=cmd_replay)

    gen = sub.add_parser("gen-trace", help="synthesize a trace directory")
    gen.add_argument("--spec", help="synthetic spec JSON file")
    gen.add_argument("--reference", action="store_true", help="use the built-in demo spec")
    gen.add_argument("--out", required=True, help="output directory")
    gen.set_defaults(func=cmd_gen_trace)

    bench = sub.add_parser("bench", help="measure per-frame latency over a trace")
    bench.add_argument("--trace", required=True, help="trace directory or synthetic spec file")
    bench.add_argument("--repeats", type=int, default=1)
    _add_config_flags(bench)
    bench.set_defaults(func=cmd_bench)

    serve = sub.add_parser("serve", help="run the WebSocket session service")
    serve.add_argument("--port", type=int, default=8765)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--trace", help="trace to loop per connection (default: built-in demo)")
    _add_config_flags(serve)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"airboard: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        return 1
    except Exception:
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
