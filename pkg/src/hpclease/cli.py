"""Command-line entry point: ``hpclease {simulate,sweep,offline,bounds,plot-script}``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields
from pathlib import Path

from .bounds import compute_bounds, total_quality_bound
from .core import Decision, InvalidParams, InvalidTrace, Params
from .harness import DEFAULT_V_GRID, cf_max_for, format_sweep, plot_script, sweep
from .offline import OfflineInfeasible, OfflineProblem, solve_offline
from .simulator import run, write_run
from .traces import TraceConfig, generate, read_trace, write_trace


def _floats(text: str) -> list[float]:
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _h_probs(text: str) -> tuple[float, float, float]:
    values = _floats(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"--h-probs needs three values, got {text!r}")
    return tuple(values)


def _fmt(x) -> str:
    return repr(x) if isinstance(x, float) else str(x)


def _add_trace_flags(p: argparse.ArgumentParser, slots_default) -> None:
    p.add_argument("--slots", type=int, default=slots_default)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--price-min", type=float, default=0.5)
    p.add_argument("--price-max", type=float, default=5.0)
    p.add_argument("--h-probs", type=_h_probs, default=(1 / 3, 1 / 3, 1 / 3))
    p.add_argument("--arrival-prob", type=float, default=1.0)
    p.add_argument("--trace-in", type=Path)
    p.add_argument("--trace-out", type=Path)
    p.add_argument("--out-dir", type=Path, default=Path("out"))
    p.add_argument("--empty-queue-delay-increment", action="store_true")


def _trace_config(args, slots: int) -> TraceConfig:
    return TraceConfig(
        slots=slots, seed=args.seed, h_probs=args.h_probs,
        price_min=args.price_min, price_max=args.price_max,
        arrival_prob=args.arrival_prob, alpha=args.alpha,
    )


def _load_or_generate(args, slots: int):
    if args.trace_in is not None:
        trace = read_trace(args.trace_in)
    else:
        trace = generate(_trace_config(args, slots))
    if args.trace_out is not None:
        write_trace(trace, args.trace_out)
    return trace


def cmd_simulate(args) -> int:
    trace = _load_or_generate(args, args.slots)
    params = Params(
        V=args.v[0], eps_q=args.eps_q[0], eps_d=args.eps_d[0], alpha=trace.alpha,
        cf_max=cf_max_for(trace, args.price_max),
        empty_queue_delay_increment=args.empty_queue_delay_increment,
    )
    record, summary = run(trace, params)
    write_run(record, summary, args.out_dir)
    for f in fields(summary):
        print(f"{f.name}={_fmt(getattr(summary, f.name))}")
    return 0


def cmd_sweep(args) -> int:
    slots = args.slots if args.slots is not None else (500 if args.offline else 10_000)
    config = _trace_config(args, slots)
    trace = None
    if args.trace_in is not None or args.trace_out is not None:
        if args.fresh_trace_per_cell and args.trace_in is not None:
            raise ValueError("--fresh-trace-per-cell cannot be combined with --trace-in")
        trace = _load_or_generate(args, slots)
    cf_max = cf_max_for(trace, args.price_max) if trace is not None else args.price_max
    base = Params(alpha=trace.alpha if trace is not None else args.alpha, cf_max=cf_max,
                  empty_queue_delay_increment=args.empty_queue_delay_increment)
    rows = sweep(
        args.v, args.eps_q, args.eps_d, base,
        trace_config=config, trace=trace, offline=args.offline,
        fresh_trace_per_cell=args.fresh_trace_per_cell, workers=args.workers,
    )
    text = format_sweep(rows, with_offline=args.offline)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    (args.out_dir / "sweep.csv").write_text(text, encoding="utf-8", newline="")
    sys.stdout.write(text)
    return 0


def cmd_bounds(args) -> int:
    params = Params(V=args.v, eps_q=args.eps_q, eps_d=args.eps_d, alpha=args.alpha,
                    cf_max=args.cf_max)
    b = compute_bounds(params)
    for f in fields(b):
        print(f"{f.name}={_fmt(getattr(b, f.name))}")
    if args.slots is not None:
        print(f"s_total={total_quality_bound(b, args.slots)}")
    return 0


def cmd_offline(args) -> int:
    trace = read_trace(args.trace)
    solution = solve_offline(OfflineProblem(trace, args.n, args.s),
                             with_schedule=args.schedule_out is not None)
    print(f"min_cost={solution.min_cost!r}")
    if args.schedule_out is not None:
        lines = ["t,decision"] + [f"{t},{Decision(d).code}" for t, d in enumerate(solution.schedule)]
        args.schedule_out.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="")
    return 0


def cmd_plot_script(args) -> int:
    text = plot_script(args.csv, png_path=args.png)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8", newline="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hpclease", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run the online policy on one trace")
    _add_trace_flags(p, slots_default=10_000)
    p.add_argument("--v", type=_floats, default=[1.0])
    p.add_argument("--eps-q", type=_floats, default=[1.0])
    p.add_argument("--eps-d", type=_floats, default=[1.0])
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="run a (V, eps_q, eps_d) grid")
    _add_trace_flags(p, slots_default=None)
    p.add_argument("--v", type=_floats, default=list(DEFAULT_V_GRID))
    p.add_argument("--eps-q", type=_floats, default=[1.0])
    p.add_argument("--eps-d", type=_floats, default=[1.0])
    p.add_argument("--offline", action="store_true",
                   help="also solve the offline lower bound for each cell's (N, S)")
    p.add_argument("--fresh-trace-per-cell", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bounds", help="print worst-case bounds")
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--cf-max", type=float, default=5.0)
    p.add_argument("--eps-q", type=float, default=1.0)
    p.add_argument("--eps-d", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--slots", type=int, help="also print the whole-run reduced-unit cap")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("offline", help="offline minimum cost for a trace file")
    p.add_argument("--trace", type=Path, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--schedule-out", type=Path)
    p.set_defaults(func=cmd_offline)

    p = sub.add_parser("plot-script", help="emit a matplotlib script for a sweep CSV")
    p.add_argument("--csv", type=Path, required=True)
    p.add_argument("--out", type=Path)
    p.add_argument("--png", default="sweep.png")
    p.set_defaults(func=cmd_plot_script)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidParams, InvalidTrace, OfflineInfeasible, ValueError, OSError) as exc:
        print(f"hpclease {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
