import math

import numpy as np
import pytest

from hpclease.core import Decision, Params, Trace
from hpclease.offline import (
    OfflineInfeasible, OfflineProblem, ScheduleViolation, solve_offline, verify_schedule,
)
from hpclease.simulator import run
from hpclease.traces import TraceConfig, generate

from oracles import dyadic, exhaustive_offline, exhaustive_offline_slow

FF, FR, PF, PR, NT = (Decision.FREE_FULL, Decision.FREE_REDUCED, Decision.PURCHASE_FULL,
                      Decision.PURCHASE_REDUCED, Decision.NO_TRANSMIT)


def small_trace():
    return Trace(h=[2, 0, 0], cf=[4.0, 3.0, 1.0], cr=[2.0, 1.5, 0.5], arrival=[1, 1, 1], alpha=0.5)


def test_three_slot_example():
    trace = small_trace()
    expected = exhaustive_offline_slow(trace.h, trace.cf, trace.cr, trace.arrival, 2, 0)
    assert expected == 1.0
    problem = OfflineProblem(trace, 2, 0)
    sol = solve_offline(problem)
    assert sol.min_cost == expected
    assert sol.schedule == [FF, NT, PF]
    assert verify_schedule(problem, sol.schedule) == 1.0


def test_always_free_costs_nothing():
    trace = generate(TraceConfig(slots=60, seed=3, h_probs=(0, 0, 1)))
    assert solve_offline(OfflineProblem(trace, 45, 0)).min_cost == 0


def test_more_units_than_slots_is_infeasible():
    trace = generate(TraceConfig(slots=20, seed=3))
    with pytest.raises(OfflineInfeasible):
        solve_offline(OfflineProblem(trace, 21, 0))


def test_late_arrivals_infeasible():
    trace = Trace([0, 0, 0, 0], [1.0] * 4, [0.5] * 4, [0, 0, 1, 1], alpha=0.5)
    solve_offline(OfflineProblem(trace, 2, 0))
    with pytest.raises(OfflineInfeasible):
        solve_offline(OfflineProblem(trace, 3, 0))


def test_problem_validation():
    trace = small_trace()
    with pytest.raises(ValueError):
        OfflineProblem(trace, 0, 0)
    with pytest.raises(ValueError):
        OfflineProblem(trace, 2, 3)


def test_vectorised_oracle_agrees_with_loop_oracle():
    rng = np.random.default_rng(0)
    for _ in range(30):
        D = int(rng.integers(1, 6))
        h = rng.integers(0, 3, D)
        cf = dyadic(rng, 0.5, 5, size=D)
        arrival = rng.integers(0, 2, D)
        n, s = int(rng.integers(1, D + 1)), int(rng.integers(0, D + 1))
        assert exhaustive_offline(h, cf, cf / 2, arrival, n, s) == \
            exhaustive_offline_slow(h, cf, cf / 2, arrival, n, s)


def test_dp_matches_exhaustive_small():
    rng = np.random.default_rng(12)
    for _ in range(60):
        D = int(rng.integers(1, 7))
        h = rng.integers(0, 3, D)
        cf = dyadic(rng, 0.5, 5, size=D)
        arrival = (rng.random(D) < 0.8).astype(int)
        n = int(rng.integers(1, D + 1))
        s = int(rng.integers(0, n + 1))
        trace = Trace(h, cf, cf / 2, arrival, alpha=0.5)
        expected = exhaustive_offline(h, cf, cf / 2, arrival, n, s)
        problem = OfflineProblem(trace, n, s)
        if math.isinf(expected):
            with pytest.raises(OfflineInfeasible):
                solve_offline(problem)
        else:
            sol = solve_offline(problem)
            assert sol.min_cost == expected
            assert verify_schedule(problem, sol.schedule) == expected


def test_cost_only_mode_matches():
    trace = generate(TraceConfig(slots=200, seed=9))
    a = solve_offline(OfflineProblem(trace, 150, 40))
    b = solve_offline(OfflineProblem(trace, 150, 40), with_schedule=False)
    assert a.min_cost == b.min_cost and b.schedule is None


def test_monotone_in_budget_and_target():
    trace = generate(TraceConfig(slots=120, seed=21, arrival_prob=0.9))
    costs_s = [solve_offline(OfflineProblem(trace, 90, s), with_schedule=False).min_cost
               for s in range(0, 91, 10)]
    assert all(a >= b for a, b in zip(costs_s, costs_s[1:]))
    costs_n = [solve_offline(OfflineProblem(trace, n, 20), with_schedule=False).min_cost
               for n in range(20, 101, 10)]
    assert all(a <= b for a, b in zip(costs_n, costs_n[1:]))


@pytest.mark.parametrize("V", [1, 10, 100])
def test_lower_bounds_online_run(V):
    trace = generate(TraceConfig(slots=300, seed=V))
    _, m = run(trace, Params(V=V))
    sol = solve_offline(OfflineProblem(trace, m.N, m.S), with_schedule=False)
    assert sol.min_cost <= m.total_cost


def test_online_schedule_passes_offline_audit():
    trace = generate(TraceConfig(slots=300, seed=8))
    record, m = run(trace, Params(V=10))
    problem = OfflineProblem(trace, m.N, m.S)
    cost = verify_schedule(problem, [Decision(int(d)) for d in record.decision])
    assert cost == pytest.approx(m.total_cost, rel=1e-12)


def test_violation_causality():
    trace = Trace([0, 0], [1.0, 1.0], [0.5, 0.5], [0, 1], alpha=0.5)
    with pytest.raises(ScheduleViolation) as exc:
        verify_schedule(OfflineProblem(trace, 1, 0), [PF, NT])
    assert exc.value.slot == 0 and "causality" in exc.value.constraint


def test_violation_quality_budget():
    trace = small_trace()
    with pytest.raises(ScheduleViolation) as exc:
        verify_schedule(OfflineProblem(trace, 2, 1), [FR, PR, NT])
    assert exc.value.slot == 1 and "quality" in exc.value.constraint


def test_violation_spectrum_and_count():
    trace = small_trace()
    with pytest.raises(ScheduleViolation, match="h=0"):
        verify_schedule(OfflineProblem(trace, 2, 0), [FF, FF, NT])
    with pytest.raises(ScheduleViolation, match="delivered 1"):
        verify_schedule(OfflineProblem(trace, 2, 0), [FF, NT, NT])
    with pytest.raises(ScheduleViolation, match="slots"):
        verify_schedule(OfflineProblem(trace, 2, 0), [FF, PF])
