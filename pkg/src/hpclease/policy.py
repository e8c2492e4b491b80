"""Per-slot drift-plus-penalty decision rule.

Each of the five actions contributes a value to the per-slot objective; the
policy picks the cheapest action allowed by the current spectrum state.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Decision, Params, QueueState, SlotInput

# Candidate order used to break exact ties, both in ``decide`` and in the
# brute-force oracle: free before purchased, full before reduced, any
# transmission before idling.
TIE_ORDER = (
    Decision.FREE_FULL,
    Decision.FREE_REDUCED,
    Decision.PURCHASE_FULL,
    Decision.PURCHASE_REDUCED,
    Decision.NO_TRANSMIT,
)


@dataclass(frozen=True)
class GValues:
    g1: float
    g2: float
    g3: float
    g4: float
    g5: float = 0.0


def compute_g(state: QueueState, slot: SlotInput, p: Params) -> GValues:
    """Objective value of each action taken alone.

    ``g1``..``g4`` correspond to free-full, free-reduced, purchase-full and
    purchase-reduced; ``g5`` (idle) is always zero.
    """
    w = state.Q + state.Z * (p.eps_d + 1) + state.Y
    return GValues(
        g1=-w,
        g2=p.eps_q * state.Y - w,
        g3=p.V * slot.cf - w,
        g4=(p.V * slot.cr + p.eps_q * state.Y) - w,
    )


def decide(state: QueueState, slot: SlotInput, p: Params) -> Decision:
    if state.Q <= 0:
        return Decision.NO_TRANSMIT
    if slot.h == 2:
        return Decision.FREE_FULL
    g = compute_g(state, slot, p)
    if slot.h == 1:
        candidates = ((g.g2, Decision.FREE_REDUCED), (g.g3, Decision.PURCHASE_FULL))
    else:
        candidates = ((g.g3, Decision.PURCHASE_FULL), (g.g4, Decision.PURCHASE_REDUCED))
    best = min(min(value for value, _ in candidates), g.g5)
    for value, decision in candidates:
        if value == best:
            return decision
    return Decision.NO_TRANSMIT


def feasible_decisions(state: QueueState, slot: SlotInput) -> list[Decision]:
    """Actions allowed by spectrum state ``h`` and backlog, in tie order."""
    if state.Q <= 0:
        return [Decision.NO_TRANSMIT]
    allowed = {Decision.PURCHASE_FULL, Decision.PURCHASE_REDUCED, Decision.NO_TRANSMIT}
    if slot.h >= 1:
        allowed.add(Decision.FREE_REDUCED)
    if slot.h == 2:
        allowed.add(Decision.FREE_FULL)
    return [d for d in TIE_ORDER if d in allowed]


def objective(decision: Decision, state: QueueState, slot: SlotInput, p: Params) -> float:
    """Per-slot objective evaluated term by term from the indicator vector."""
    ff, fr, pf, pr = decision.indicators()
    r = ff + fr + pf + pr
    return (
        p.V * (pf * slot.cf + pr * slot.cr)
        + state.Y * (p.eps_q - 1) * (fr + pr)
        - state.Y * (ff + pf)
        - state.Q * r
        - state.Z * (p.eps_d + 1) * r
    )


def decide_bruteforce(state: QueueState, slot: SlotInput, p: Params) -> Decision:
    """Exhaustive minimiser of ``objective`` over the feasible actions.

    Independent of ``compute_g``; used to cross-check ``decide``.
    """
    best_decision, best_value = None, None
    for d in feasible_decisions(state, slot):
        value = objective(d, state, slot, p)
        if best_value is None or value < best_value:
            best_decision, best_value = d, value
    return best_decision
