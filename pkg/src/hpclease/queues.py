"""One-slot update rules for the actual, quality-aware and delay-aware queues."""

from __future__ import annotations

from .core import Decision


def update_actual(Q: int, decision: Decision, next_arrival: int) -> int:
    """Serve at most one unit, then admit the next slot's arrival."""
    return max(Q - decision.departs, 0) + next_arrival


def update_quality(Y: float, decision: Decision, eps_q: float) -> float:
    """Quality queue: drains with every departure, grows ``eps_q`` per reduced unit."""
    increment = eps_q if decision.reduced else 0.0
    return max(Y - decision.departs + increment, 0.0)


def update_delay(
    Z: float,
    decision: Decision,
    eps_d: float,
    Q_current: int,
    empty_queue_delay_increment: bool = False,
) -> float:
    """Delay queue: drains with every departure, grows ``eps_d`` per idle slot.

    By default an idle slot only counts when there was backlog to serve
    (``Q_current > 0``). Setting ``empty_queue_delay_increment`` charges every
    idle slot regardless of backlog.
    """
    idle = decision is Decision.NO_TRANSMIT
    increment = eps_d if idle and (Q_current > 0 or empty_queue_delay_increment) else 0.0
    return max(Z - decision.departs + increment, 0.0)
