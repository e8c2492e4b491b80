"""Worst-case bounds on backlog, delay and quality, and sample-path audits.

The closed forms bound what the online policy can produce for a given
parameter set; ``audit_run`` re-checks each of them slot by slot on a
finished simulation, together with the one-slot drift inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Decision, Params


@dataclass(frozen=True)
class BoundSet:
    q_max: float
    z_max: float
    y_max: float
    d_max: int
    s_max: int
    cf_max: float
    cr_max: float


def compute_bounds(p: Params) -> BoundSet:
    vc = float(p.V * p.cf_max)
    y_max = vc + p.eps_q
    d_max = math.ceil(vc + 1)
    return BoundSet(
        q_max=vc + 2,
        z_max=vc / (1 + p.eps_d) + p.eps_d,
        y_max=y_max,
        d_max=d_max,
        s_max=math.ceil(min((y_max + d_max) / p.eps_q, d_max)),
        cf_max=float(p.cf_max),
        cr_max=float(p.alpha * p.cf_max),
    )


def total_quality_bound(bounds: BoundSet, D: int) -> int:
    """Cap on reduced-size transmissions over a horizon of ``D`` slots."""
    if D < 1:
        raise ValueError(f"horizon must be at least one slot, got {D}")
    return min(math.ceil(D * bounds.s_max / bounds.d_max), D)


def lyapunov(state) -> float:
    return (state.Q**2 + state.Y**2 + state.Z**2) / 2


def drift_constant_B(p: Params) -> float:
    return 2.5 + (p.eps_d + 1) ** 2 / 2 + 0.5 * max((p.eps_q - 1) ** 2, 1)


def drift_margin(Q, Y, Z, Q_next, Y_next, Z_next, decisions, applied_arrival, p: Params):
    """Right-hand side minus left-hand side of the one-slot drift inequality.

    All arguments after the state triples are per-slot arrays; the result is
    nonnegative wherever the inequality holds. ``applied_arrival`` is the
    arrival that actually entered ``Q_next``.
    """
    Q, Y, Z = (np.asarray(a, dtype=np.float64) for a in (Q, Y, Z))
    Qn, Yn, Zn = (np.asarray(a, dtype=np.float64) for a in (Q_next, Y_next, Z_next))
    d = np.asarray(decisions)
    a = np.asarray(applied_arrival, dtype=np.float64)
    r = (d != Decision.NO_TRANSMIT).astype(np.float64)
    reduced = ((d == Decision.FREE_REDUCED) | (d == Decision.PURCHASE_REDUCED)).astype(np.float64)
    full = ((d == Decision.FREE_FULL) | (d == Decision.PURCHASE_FULL)).astype(np.float64)
    lhs = (Qn**2 + Yn**2 + Zn**2) / 2 - (Q**2 + Y**2 + Z**2) / 2
    rhs = (
        drift_constant_B(p)
        + Q * (a - r)
        + Z * (p.eps_d - (p.eps_d + 1) * r)
        + Y * ((p.eps_q - 1) * reduced - full)
    )
    return rhs - lhs


def window_counts(reduced_per_slot, width: int) -> np.ndarray:
    """Reduced-size transmissions in every window of ``width`` consecutive slots.

    A run shorter than ``width`` yields its single total.
    """
    x = np.asarray(reduced_per_slot, dtype=np.int64)
    if len(x) <= width:
        return np.array([x.sum()])
    c = np.concatenate([[0], np.cumsum(x)])
    return c[width:] - c[:-width]


def audit_run(record, p: Params) -> list[str]:
    """Check every worst-case bound and the drift inequality on a finished run.

    Returns human-readable violation messages; an empty list means the run
    is clean.
    """
    b = compute_bounds(p)
    problems = []
    Q, Y, Z = record.Q_path, record.Y_path, record.Z_path
    for name, path, cap in (("Q", Q, b.q_max), ("Y", Y, b.y_max), ("Z", Z, b.z_max)):
        bad = np.flatnonzero(~(path < cap))
        if bad.size:
            problems.append(f"{name}({bad[0]})={path[bad[0]]!r} not below {name}_max={cap!r}")

    delays = record.departure_slot - record.arrival_slot
    bad = np.flatnonzero(delays > b.d_max)
    if bad.size:
        i = bad[0]
        problems.append(
            f"unit arriving at slot {record.arrival_slot[i]} waited {delays[i]} > D_max={b.d_max}"
        )

    reduced = np.isin(record.decision, (Decision.FREE_REDUCED, Decision.PURCHASE_REDUCED))
    counts = window_counts(reduced, b.d_max)
    bad = np.flatnonzero(counts > b.s_max)
    if bad.size:
        problems.append(
            f"window starting at slot {bad[0]} has {counts[bad[0]]} reduced units > S_max={b.s_max}"
        )
    total_cap = total_quality_bound(b, len(record.decision))
    if reduced.sum() > total_cap:
        problems.append(f"{reduced.sum()} reduced units over the run > bound {total_cap}")

    margin = drift_margin(
        Q[:-1], Y[:-1], Z[:-1], Q[1:], Y[1:], Z[1:],
        record.decision, record.applied_arrival, p,
    )
    bad = np.flatnonzero(margin < 0)
    if bad.size:
        problems.append(f"drift inequality fails at slot {bad[0]} by {-margin[bad[0]]!r}")
    return problems
