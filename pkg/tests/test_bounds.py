import math

import numpy as np
import pytest

from hpclease.bounds import (
    BoundSet, audit_run, compute_bounds, drift_constant_B, drift_margin, lyapunov,
    total_quality_bound, window_counts,
)
from hpclease.core import Decision, Params, QueueState
from hpclease.simulator import run
from hpclease.traces import TraceConfig, generate


def test_bounds_unit_weight():
    b = compute_bounds(Params(V=1, cf_max=5, eps_d=1, eps_q=1))
    assert (b.q_max, b.z_max, b.y_max, b.d_max, b.s_max) == (7, 3.5, 6, 6, 6)
    assert b.cr_max == 2.5


def test_delay_bound_large_weight():
    assert compute_bounds(Params(V=100, cf_max=5)).d_max == 501


def test_quality_branch_of_window_bound():
    # y_max = 5 + 1000, d_max = 6  ->  ceil(min(1011/1000, 6)) = 2
    b = compute_bounds(Params(V=1, cf_max=5, eps_q=1000))
    assert b.y_max == 1005
    assert b.s_max == 2


@pytest.mark.parametrize("V", [0.01, 0.1, 1, 3.3, 100, 1e4])
@pytest.mark.parametrize("eps_q", [0.1, 1, 7, 500])
def test_window_bound_never_exceeds_delay_bound(V, eps_q):
    b = compute_bounds(Params(V=V, eps_q=eps_q))
    assert 1 <= b.s_max <= b.d_max


def _bset(s_max, d_max):
    return BoundSet(q_max=0, z_max=0, y_max=0, d_max=d_max, s_max=s_max, cf_max=5, cr_max=2.5)


@pytest.mark.parametrize("s_max, d_max, D, expected", [
    (6, 6, 10_000, 10_000),
    (1, 501, 10_000, 20),
    (3, 7, 1, 1),
    (2, 7, 10, 3),
])
def test_total_quality_bound(s_max, d_max, D, expected):
    assert total_quality_bound(_bset(s_max, d_max), D) == expected


def test_total_quality_bound_needs_positive_horizon():
    with pytest.raises(ValueError):
        total_quality_bound(_bset(1, 1), 0)


@pytest.mark.parametrize("state, expected", [
    (QueueState(0, 0, 0), 0),
    (QueueState(3, 4, 0), 12.5),
    (QueueState(1, 1, 1), 1.5),
])
def test_lyapunov(state, expected):
    assert lyapunov(state) == expected


@pytest.mark.parametrize("eps_d, eps_q, expected", [
    (1, 1, 5.0),
    (0.5, 3, 5.625),
    (1, 2, 5.0),
])
def test_drift_constant(eps_d, eps_q, expected):
    assert drift_constant_B(Params(eps_d=eps_d, eps_q=eps_q)) == expected


def test_window_counts_by_brute_force():
    rng = np.random.default_rng(1)
    x = rng.integers(0, 2, size=200)
    for width in (1, 5, 17):
        expected = [x[i:i + width].sum() for i in range(len(x) - width + 1)]
        assert list(window_counts(x, width)) == expected
    assert list(window_counts(x[:4], 10)) == [x[:4].sum()]


def test_drift_margin_detects_violation():
    p = Params()
    ok = drift_margin([5], [0], [0], [5], [0], [0], [Decision.FREE_FULL], [1], p)
    assert ok[0] >= 0
    # Q jumping from 0 to 10 in one slot is not a legal transition
    bad = drift_margin([0], [0], [0], [10], [0], [0], [Decision.NO_TRANSMIT], [1], p)
    assert bad[0] < 0


@pytest.mark.parametrize("V, eps_q, eps_d", [(0.1, 0.5, 2), (10, 2, 0.5), (100, 1, 1)])
def test_audit_clean_on_simulated_run(V, eps_q, eps_d):
    trace = generate(TraceConfig(slots=3000, seed=4))
    p = Params(V=V, eps_q=eps_q, eps_d=eps_d)
    record, _ = run(trace, p)
    assert audit_run(record, p) == []


def test_audit_reports_tampered_record():
    trace = generate(TraceConfig(slots=500, seed=4))
    p = Params(V=10)
    record, _ = run(trace, p)
    record.Q_path[100] = math.ceil(compute_bounds(p).q_max) + 5
    problems = audit_run(record, p)
    assert any(msg.startswith("Q(100)") for msg in problems)


@pytest.mark.parametrize("arrival_prob", [0.0, 0.1, 0.5])
@pytest.mark.parametrize("V", [0.1, 1, 100])
def test_delay_queue_bound_needs_backlog_gating(arrival_prob, V):
    trace = generate(TraceConfig(slots=3000, seed=1, arrival_prob=arrival_prob))
    gated = Params(V=V, eps_d=0.5)
    record, _ = run(trace, gated)
    assert audit_run(record, gated) == []
    if arrival_prob == 0.0:
        # idle slots on an empty queue pump Z past its bound under the literal update
        literal = Params(V=V, eps_d=0.5, empty_queue_delay_increment=True)
        record, _ = run(trace, literal)
        assert record.Z_path.max() >= compute_bounds(literal).z_max
