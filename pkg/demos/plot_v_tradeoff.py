"""
Cost, backlog and quality as V grows
====================================

Sweep V over seven decades on one shared trace. Larger V buys lower cost
with a longer queue; the number of reduced-size units falls.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from hpclease import Params, TraceConfig
from hpclease.harness import DEFAULT_V_GRID, sweep

rows = sweep(DEFAULT_V_GRID, [1.0], [1.0], Params(), trace_config=TraceConfig(slots=10_000, seed=7))
for r in rows:
    print(f"V={r.V:>8g}  cost={r.total_cost:9.2f}  final_Q={r.final_Q:5d}  S={r.S:5d}")

x = np.log10([r.V for r in rows])
fig, (a, b) = plt.subplots(1, 2, figsize=(10, 3.5))
a.plot(x, [r.final_Q for r in rows], "o-", label="final Q")
a.plot(x, [r.S for r in rows], "s-", label="reduced units S")
a.set_xlabel("log10(V)")
a.legend()
b.plot(x, [r.total_cost for r in rows], "o-")
b.set_xlabel("log10(V)")
b.set_ylabel("total cost ($cents)")
fig.tight_layout()
fig.savefig("v_tradeoff.png", dpi=120)
