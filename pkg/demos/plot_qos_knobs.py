"""
Trading delay and quality with eps_d and eps_q
==============================================

Fix V and vary the two virtual-queue increments. A larger eps_d charges
idle slots more heavily, so the policy leases sooner and delays shrink; a
larger eps_q makes reduced-size units more expensive in the objective.
"""

from hpclease import Params, TraceConfig
from hpclease.harness import sweep

rows = sweep([10, 100], [0.5, 1, 2, 4], [0.5, 1, 2], Params(),
             trace_config=TraceConfig(slots=10_000, seed=11), workers=4)
print(f"{'V':>5} {'eps_q':>5} {'eps_d':>5} {'cost':>9} {'S':>5} {'max_delay':>9}")
for r in rows:
    print(f"{r.V:5g} {r.eps_q:5g} {r.eps_d:5g} {r.total_cost:9.2f} {r.S:5d} {r.max_delay:9d}")
