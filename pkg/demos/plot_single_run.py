"""
One run of the online leasing policy
====================================

Generate a 10,000-slot environment trace, run the policy, and check the
worst-case bounds slot by slot.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from hpclease import Params, TraceConfig, compute_bounds, generate, run
from hpclease.bounds import audit_run

trace = generate(TraceConfig(slots=10_000, seed=7))
params = Params(V=100, eps_q=1, eps_d=1, alpha=0.5, cf_max=5)
record, summary = run(trace, params)
print(summary)

# every bound holds on this sample path, and so does the one-slot drift inequality
bounds = compute_bounds(params)
print(bounds)
print("violations:", audit_run(record, params))

fig, ax = plt.subplots(figsize=(8, 3))
ax.plot(record.Q_path, label="Q (backlog)")
ax.plot(record.Z_path, label="Z (delay queue)")
ax.axhline(bounds.q_max, color="k", ls=":", label="Q_max")
ax.set_xlabel("slot")
ax.legend()
fig.tight_layout()
fig.savefig("single_run.png", dpi=120)
