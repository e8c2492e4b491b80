"""Online HPC spectrum-leasing policy with delay and quality virtual queues.

The online rule lives in :mod:`hpclease.policy`, the closed loop in
:mod:`hpclease.simulator`, worst-case bounds in :mod:`hpclease.bounds` and
the offline lower bound in :mod:`hpclease.offline`.
"""

from .bounds import BoundSet, compute_bounds, drift_constant_B, lyapunov, total_quality_bound
from .core import Decision, InvalidParams, InvalidTrace, Params, QueueState, SlotInput, Trace, validate_params
from .offline import OfflineInfeasible, OfflineProblem, solve_offline, verify_schedule
from .policy import GValues, compute_g, decide, decide_bruteforce
from .simulator import RunRecord, SummaryMetrics, run
from .traces import TraceConfig, generate, read_trace, write_trace

__version__ = "0.1.0"
