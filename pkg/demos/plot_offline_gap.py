"""
Online cost against the offline lower bound
===========================================

For each V, feed the online run's delivered units N and reduced units S to
the offline dynamic program on the same 500-slot trace. The offline cost
can never exceed the online one.
"""

from hpclease import OfflineProblem, Params, TraceConfig, generate, run, solve_offline

trace = generate(TraceConfig(slots=500, seed=3))
for V in (0.1, 1, 10, 100, 1000):
    _, m = run(trace, Params(V=V))
    lower = solve_offline(OfflineProblem(trace, m.N, m.S), with_schedule=False).min_cost
    print(f"V={V:>6g}  N={m.N}  S={m.S}  online={m.total_cost:8.3f}  offline={lower:8.3f}  "
          f"gap={m.total_cost - lower:7.3f}")
