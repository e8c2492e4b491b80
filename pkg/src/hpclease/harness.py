"""Parameter sweeps over (V, eps_q, eps_d) and plotting-script emission."""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from .core import Params, Trace
from .offline import OfflineInfeasible, OfflineProblem, solve_offline
from .simulator import run
from .traces import SplitMix64, TraceConfig, generate

DEFAULT_V_GRID = (1e-2, 1e-1, 1.0, 10.0, 1e2, 1e3, 1e4)

SWEEP_COLUMNS = ("V", "eps_q", "eps_d", "total_cost", "final_Q", "S", "N",
                 "max_Q", "max_Y", "max_Z", "max_delay")


@dataclass(frozen=True)
class SweepRow:
    V: float
    eps_q: float
    eps_d: float
    total_cost: float
    final_Q: int
    S: int
    N: int
    max_Q: float
    max_Y: float
    max_Z: float
    max_delay: int
    offline_cost: float | str | None = None

    def values(self, with_offline: bool) -> list:
        out = [getattr(self, c) for c in SWEEP_COLUMNS]
        if with_offline:
            out.append(self.offline_cost)
        return out


def cf_max_for(trace: Trace, price_max: float) -> float:
    """Largest full-size price the bounds should assume for ``trace``."""
    observed = float(trace.cf.max()) if len(trace) else 0.0
    return max(price_max, observed)


def offline_cost_for(trace: Trace, n: int, s: int) -> float | str:
    """Offline minimum cost for the online run's (N, S), or ``"infeasible"``."""
    if n == 0:
        return 0.0
    try:
        return solve_offline(OfflineProblem(trace, n, s), with_schedule=False).min_cost
    except OfflineInfeasible:
        return "infeasible"


def run_cell(trace: Trace, params: Params, offline: bool = False) -> SweepRow:
    _, m = run(trace, params)
    return SweepRow(
        V=params.V, eps_q=params.eps_q, eps_d=params.eps_d,
        total_cost=m.total_cost, final_Q=m.final_Q, S=m.S, N=m.N,
        max_Q=m.max_Q, max_Y=m.max_Y, max_Z=m.max_Z, max_delay=m.max_unit_delay,
        offline_cost=offline_cost_for(trace, m.N, m.S) if offline else None,
    )


def _cell_job(job):
    trace, params, offline = job
    return run_cell(trace, params, offline)


def sweep(
    V_values,
    eps_q_values,
    eps_d_values,
    base: Params,
    trace_config: TraceConfig | None = None,
    trace: Trace | None = None,
    offline: bool = False,
    fresh_trace_per_cell: bool = False,
    workers: int = 1,
) -> list[SweepRow]:
    """Run every grid cell and return rows in grid order (V, then eps_q, then eps_d).

    Cells share one trace unless ``fresh_trace_per_cell`` is set, in which
    case each cell gets its own seed drawn in grid order from a SplitMix64
    stream seeded with ``trace_config.seed``.
    """
    grid = list(itertools.product(V_values, eps_q_values, eps_d_values))
    if not grid:
        raise ValueError("parameter grid is empty")
    if trace is None and trace_config is None:
        raise ValueError("need a trace or a trace configuration")
    if fresh_trace_per_cell and trace_config is None:
        raise ValueError("fresh traces per cell need a trace configuration")

    if fresh_trace_per_cell:
        seeds = SplitMix64(trace_config.seed)
        traces = [generate(replace(trace_config, seed=seeds.next_u64())) for _ in grid]
    else:
        shared = trace if trace is not None else generate(trace_config)
        traces = [shared] * len(grid)

    jobs = [
        (tr, replace(base, V=v, eps_q=q, eps_d=d), offline)
        for tr, (v, q, d) in zip(traces, grid)
    ]
    if workers <= 1:
        return [_cell_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_cell_job, jobs))


def format_sweep(rows: list[SweepRow], with_offline: bool) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(SWEEP_COLUMNS) + (["offline_cost"] if with_offline else []))
    for row in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in row.values(with_offline)])
    return buf.getvalue()


_PLOT_TEMPLATE = '''\
"""Cost, final backlog and reduced-unit count against log10(V).

Generated from {source}. Requires matplotlib.
"""
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

V = {V!r}
TOTAL_COST = {cost!r}
FINAL_Q = {final_q!r}
S = {S!r}
OFFLINE_COST = {offline!r}

x = [math.log10(v) for v in V]
fig, (ax_cost, ax_q, ax_s) = plt.subplots(1, 3, figsize=(13, 4))
ax_cost.plot(x, TOTAL_COST, "o-", label="online")
if OFFLINE_COST is not None:
    pts = [(xi, c) for xi, c in zip(x, OFFLINE_COST) if c is not None]
    ax_cost.plot([p[0] for p in pts], [p[1] for p in pts], "s--", label="offline lower bound")
ax_cost.set_xlabel("log10(V)")
ax_cost.set_ylabel("total cost ($cents)")
ax_cost.legend()
ax_q.plot(x, FINAL_Q, "o-")
ax_q.set_xlabel("log10(V)")
ax_q.set_ylabel("final queue length")
ax_s.plot(x, S, "o-")
ax_s.set_xlabel("log10(V)")
ax_s.set_ylabel("reduced-size units")
fig.tight_layout()
fig.savefig({png!r}, dpi=150)
'''


def plot_script(csv_path, png_path: str = "sweep.png") -> str:
    """Return a standalone matplotlib script plotting a sweep CSV.

    The CSV rows are embedded in the script, so it runs without the package.
    An ``offline_cost`` column, when present, is overlaid on the cost panel.
    """
    path = Path(csv_path)
    if not path.exists():
        raise FileNotFoundError(f"sweep CSV not found: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ValueError(f"{path}: no data rows")
    missing = {"V", "total_cost", "final_Q", "S"} - set(rows[0])
    if missing:
        raise ValueError(f"{path}: missing columns {sorted(missing)}")

    def num(x):
        try:
            return float(x)
        except ValueError:
            return None

    offline = None
    if "offline_cost" in rows[0]:
        offline = [num(r["offline_cost"]) for r in rows]
    return _PLOT_TEMPLATE.format(
        source=path.name,
        V=[float(r["V"]) for r in rows],
        cost=[float(r["total_cost"]) for r in rows],
        final_q=[int(r["final_Q"]) for r in rows],
        S=[int(r["S"]) for r in rows],
        offline=offline,
        png=png_path,
    )
