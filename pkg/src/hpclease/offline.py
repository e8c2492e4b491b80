"""Offline minimum leasing cost with full knowledge of the trace.

Given a trace, a number of units ``N`` to deliver and a budget ``S`` of
reduced-size transmissions, find the cheapest schedule that

* sends at most one unit per slot,
* never sends a unit before it has arrived (arrivals up to and including
  the current slot are available),
* uses free spectrum only when the slot offers it (``h=1``: reduced only,
  ``h=2``: full or reduced),
* sends exactly ``N`` units, at most ``S`` of them reduced.

No per-unit delay cap is imposed, so the result lower-bounds any online run
that delivered the same ``N`` units with the same ``S``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Decision, Trace


class OfflineInfeasible(ValueError):
    pass


class ScheduleViolation(ValueError):
    def __init__(self, slot, constraint: str):
        self.slot = slot
        self.constraint = constraint
        where = "end of horizon" if slot is None else f"slot {slot}"
        super().__init__(f"{constraint} at {where}")


@dataclass(frozen=True)
class OfflineProblem:
    trace: Trace
    n_target: int
    s_budget: int

    def __post_init__(self):
        if self.n_target < 1:
            raise ValueError(f"n_target must be positive, got {self.n_target}")
        if self.s_budget < 0:
            raise ValueError(f"s_budget must be nonnegative, got {self.s_budget}")
        if self.s_budget > self.n_target:
            raise ValueError(f"s_budget={self.s_budget} exceeds n_target={self.n_target}")


@dataclass(frozen=True)
class OfflineSolution:
    min_cost: float
    schedule: list[Decision] | None


# action order doubles as the tie order
_ACTIONS = (
    Decision.FREE_FULL,
    Decision.FREE_REDUCED,
    Decision.PURCHASE_FULL,
    Decision.PURCHASE_REDUCED,
    Decision.NO_TRANSMIT,
)


def solve_offline(problem: OfflineProblem, with_schedule: bool = True) -> OfflineSolution:
    """Dynamic program over (slot, units sent, reduced units used).

    Runs backwards over slots computing the cheapest cost-to-go for every
    (sent, reduced) pair, then walks forwards picking, at each slot, the
    first action in tie order that stays optimal. Only sent-counts that
    can still reach ``n_target`` are visited, so the work per slot is
    (D - N + 1) * (S + 1) at most; worst case O(D*N*S) overall.

    Raises ``OfflineInfeasible`` when ``n_target`` units cannot be delivered.
    """
    trace = problem.trace
    D, N, S = len(trace), problem.n_target, problem.s_budget
    avail = np.cumsum(trace.arrival)
    if N > D or N > avail[-1]:
        raise OfflineInfeasible(
            f"cannot deliver {N} units: {int(avail[-1])} arrive over {D} slots"
        )

    inf = math.inf
    # units sent before slot t lie in [lo[t], hi[t]]: enough left to finish,
    # no more than have arrived or than slots elapsed
    t_idx = np.arange(D + 1)
    lo = np.maximum(0, N - (D - t_idx))
    hi = np.minimum(np.minimum(t_idx, N), np.concatenate([[0], avail]))
    if np.any(lo > hi):
        raise OfflineInfeasible(f"no schedule delivers {N} units within {D} slots")

    J = np.full((N + 2, S + 2), inf)  # padded so n+1 and s+1 never index out
    J[N, : S + 1] = 0.0
    choices = [] if with_schedule else None
    options = np.empty((5, N + 1, S + 1))
    for t in range(D - 1, -1, -1):
        a, b = lo[t], hi[t] + 1
        rows = b - a
        send_full = J[a + 1 : b + 1, : S + 1]
        send_red = J[a + 1 : b + 1, 1 : S + 2]
        if b > avail[t]:  # sending from n requires n + 1 <= arrivals so far
            cut = max(int(avail[t]) - a, 0)
            send_full = send_full.copy()
            send_red = send_red.copy()
            send_full[cut:] = inf
            send_red[cut:] = inf
        opt = options[:, :rows]
        h = trace.h[t]
        opt[0] = send_full if h == 2 else inf
        opt[1] = send_red if h >= 1 else inf
        np.add(send_full, trace.cf[t], out=opt[2])
        np.add(send_red, trace.cr[t], out=opt[3])
        opt[4] = J[a:b, : S + 1]
        best = np.argmin(opt, axis=0)
        if choices is not None:
            choices.append((a, best.astype(np.int8)))
        new = np.take_along_axis(opt, best[None], axis=0)[0]
        J[:, :] = inf
        J[a:b, : S + 1] = new

    if not math.isfinite(J[0, 0]):
        raise OfflineInfeasible(f"no schedule delivers {N} units within {D} slots")

    schedule = None
    if choices is not None:
        choices.reverse()
        schedule = []
        n = s = 0
        for t in range(D):
            a, best = choices[t]
            action = _ACTIONS[best[n - a, s]]
            schedule.append(action)
            if action.departs:
                n += 1
                s += action.reduced
    return OfflineSolution(float(J[0, 0]), schedule)


def verify_schedule(problem: OfflineProblem, schedule) -> float:
    """Re-check a schedule against every offline constraint.

    Returns the schedule's cost; raises ``ScheduleViolation`` naming the
    first broken constraint.
    """
    trace = problem.trace
    if len(schedule) != len(trace):
        raise ScheduleViolation(None, f"schedule has {len(schedule)} slots, trace has {len(trace)}")
    arrived = sent = reduced = 0
    cost = 0.0
    for t, d in enumerate(schedule):
        d = Decision(d)
        slot = trace[t]
        arrived += slot.arrival
        if d is Decision.FREE_FULL and slot.h != 2:
            raise ScheduleViolation(t, f"free full-size transmission with h={slot.h}")
        if d is Decision.FREE_REDUCED and slot.h == 0:
            raise ScheduleViolation(t, "free reduced-size transmission with h=0")
        if d.departs:
            sent += 1
            if sent > arrived:
                raise ScheduleViolation(t, "causality: transmitting a unit that has not arrived")
        if d.reduced:
            reduced += 1
            if reduced > problem.s_budget:
                raise ScheduleViolation(t, f"quality budget: more than {problem.s_budget} reduced units")
        if d is Decision.PURCHASE_FULL:
            cost += slot.cf
        elif d is Decision.PURCHASE_REDUCED:
            cost += slot.cr
    if sent != problem.n_target:
        raise ScheduleViolation(None, f"delivered {sent} units, target is {problem.n_target}")
    return cost
