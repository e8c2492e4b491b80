"""Closed-loop simulation of the online leasing policy over a finite trace."""

from __future__ import annotations

import csv
import io
import math
from collections import deque
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .core import Decision, Params, QueueState, Trace
from .policy import decide
from .queues import update_actual, update_delay, update_quality


@dataclass
class RunRecord:
    """Per-slot and per-unit log of one run.

    ``Q_path``, ``Y_path`` and ``Z_path`` have one entry per slot plus the
    state after the final slot. ``applied_arrival[t]`` is the arrival that
    entered the queue in the update after slot ``t`` (that is, ``A(t+1)``;
    zero after the last slot).
    """

    h: np.ndarray
    cf: np.ndarray
    Q_path: np.ndarray
    Y_path: np.ndarray
    Z_path: np.ndarray
    decision: np.ndarray
    slot_cost: np.ndarray
    applied_arrival: np.ndarray
    arrival_slot: np.ndarray
    departure_slot: np.ndarray
    unit_reduced: np.ndarray

    def slot_rows(self):
        for t in range(len(self.decision)):
            yield (t, int(self.h[t]), float(self.cf[t]), int(self.Q_path[t]),
                   float(self.Y_path[t]), float(self.Z_path[t]),
                   Decision(int(self.decision[t])).code, float(self.slot_cost[t]))

    def unit_rows(self):
        for a, d, r in zip(self.arrival_slot, self.departure_slot, self.unit_reduced):
            yield int(a), int(d), int(r)


@dataclass(frozen=True)
class SummaryMetrics:
    total_cost: float
    final_Q: int
    S: int
    N: int
    max_Q: float
    max_Y: float
    max_Z: float
    max_unit_delay: int
    slots: int


def run(trace: Trace, p: Params) -> tuple[RunRecord, SummaryMetrics]:
    """Drive the policy through ``trace`` starting from empty queues.

    The queue is empty at slot 0; the arrival recorded at slot ``t + 1`` is
    admitted after the decision at slot ``t``, so ``trace.arrival[0]`` is
    never used and nothing is admitted after the last slot.
    """
    D = len(trace)
    if D == 0:
        raise ValueError("trace is empty")
    Q_path = np.zeros(D + 1, dtype=np.int64)
    Y_path = np.zeros(D + 1)
    Z_path = np.zeros(D + 1)
    decisions = np.empty(D, dtype=np.int8)
    slot_cost = np.zeros(D)
    applied = np.zeros(D, dtype=np.int64)
    applied[:-1] = trace.arrival[1:]

    waiting: deque[int] = deque()
    arrival_slot, departure_slot, unit_reduced = [], [], []
    state = QueueState()
    for t, slot in enumerate(trace):
        d = decide(state, slot, p)
        decisions[t] = d
        if d is Decision.PURCHASE_FULL:
            slot_cost[t] = slot.cf
        elif d is Decision.PURCHASE_REDUCED:
            slot_cost[t] = slot.cr
        if d.departs:
            arrival_slot.append(waiting.popleft())
            departure_slot.append(t)
            unit_reduced.append(d.reduced)
        a = int(applied[t])
        if a:
            waiting.append(t + 1)
        state = QueueState(
            update_actual(state.Q, d, a),
            update_quality(state.Y, d, p.eps_q),
            update_delay(state.Z, d, p.eps_d, state.Q, p.empty_queue_delay_increment),
        )
        Q_path[t + 1], Y_path[t + 1], Z_path[t + 1] = state.Q, state.Y, state.Z

    record = RunRecord(
        h=trace.h.copy(), cf=trace.cf.copy(),
        Q_path=Q_path, Y_path=Y_path, Z_path=Z_path,
        decision=decisions, slot_cost=slot_cost, applied_arrival=applied,
        arrival_slot=np.array(arrival_slot, dtype=np.int64),
        departure_slot=np.array(departure_slot, dtype=np.int64),
        unit_reduced=np.array(unit_reduced, dtype=bool),
    )
    return record, summarize(record)


def summarize(record: RunRecord) -> SummaryMetrics:
    delays = record.departure_slot - record.arrival_slot
    return SummaryMetrics(
        total_cost=math.fsum(record.slot_cost),
        final_Q=int(record.Q_path[-1]),
        S=int(record.unit_reduced.sum()),
        N=len(record.departure_slot),
        max_Q=float(record.Q_path.max()),
        max_Y=float(record.Y_path.max()),
        max_Z=float(record.Z_path.max()),
        max_unit_delay=int(delays.max()) if len(delays) else 0,
        slots=len(record.decision),
    )


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


SLOT_HEADER = ("t", "h", "cf", "Q", "Y", "Z", "decision", "slot_cost")
UNIT_HEADER = ("arrival_slot", "departure_slot", "reduced")
SUMMARY_HEADER = tuple(f.name for f in fields(SummaryMetrics))


def write_run(record: RunRecord, summary: SummaryMetrics, out_dir) -> dict[str, Path]:
    """Write ``slots.csv``, ``units.csv`` and ``summary.csv`` into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "slots": (out / "slots.csv", _csv_text(SLOT_HEADER, record.slot_rows())),
        "units": (out / "units.csv", _csv_text(UNIT_HEADER, record.unit_rows())),
        "summary": (out / "summary.csv", _csv_text(
            SUMMARY_HEADER, [tuple(getattr(summary, k) for k in SUMMARY_HEADER)])),
    }
    for path, text in files.values():
        path.write_text(text, encoding="utf-8", newline="")
    return {k: v[0] for k, v in files.items()}
