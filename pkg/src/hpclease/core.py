"""Domain types shared across the package.

Prices are carried per data unit (full size ``cf``, reduced size ``cr``), so
the bits-per-unit constant never appears in the arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np


class InvalidParams(ValueError):
    """Raised when a parameter set violates one or more invariants.

    ``problems`` lists one message per violated invariant.
    """

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class InvalidTrace(ValueError):
    pass


class Decision(enum.IntEnum):
    """The five mutually exclusive per-slot actions.

    The integer value doubles as the compact code stored in per-slot arrays.
    """

    FREE_FULL = 0
    FREE_REDUCED = 1
    PURCHASE_FULL = 2
    PURCHASE_REDUCED = 3
    NO_TRANSMIT = 4

    @property
    def code(self) -> str:
        return _CODES[self]

    @classmethod
    def from_code(cls, code: str) -> "Decision":
        try:
            return _FROM_CODE[code]
        except KeyError:
            raise ValueError(f"unknown decision code {code!r}") from None

    @property
    def departs(self) -> int:
        """Departure indicator R(t) in {0, 1}."""
        return 0 if self is Decision.NO_TRANSMIT else 1

    @property
    def reduced(self) -> bool:
        return self in (Decision.FREE_REDUCED, Decision.PURCHASE_REDUCED)

    @property
    def full(self) -> bool:
        return self in (Decision.FREE_FULL, Decision.PURCHASE_FULL)

    @property
    def purchased(self) -> bool:
        return self in (Decision.PURCHASE_FULL, Decision.PURCHASE_REDUCED)

    def indicators(self) -> tuple[int, int, int, int]:
        """Return ``(d_ff, d_fr, d_pf, d_pr)``; at most one entry is 1."""
        bits = [0, 0, 0, 0]
        if self is not Decision.NO_TRANSMIT:
            bits[int(self)] = 1
        return tuple(bits)

    @classmethod
    def from_indicators(cls, bits: Sequence[int]) -> "Decision":
        bits = [int(b) for b in bits]
        if len(bits) != 4 or any(b not in (0, 1) for b in bits):
            raise ValueError(f"expected four binary indicators, got {bits!r}")
        if sum(bits) > 1:
            raise ValueError(f"decision indicators are mutually exclusive, got {bits!r}")
        if sum(bits) == 0:
            return cls.NO_TRANSMIT
        return cls(bits.index(1))


_CODES = {
    Decision.FREE_FULL: "FF",
    Decision.FREE_REDUCED: "FR",
    Decision.PURCHASE_FULL: "PF",
    Decision.PURCHASE_REDUCED: "PR",
    Decision.NO_TRANSMIT: "NT",
}
_FROM_CODE = {v: k for k, v in _CODES.items()}


@dataclass(frozen=True)
class Params:
    """Policy knobs.

    Attributes:
        V: penalty weight on leasing cost.
        eps_q: increment of the quality queue per reduced-size transmission.
        eps_d: increment of the delay queue per idle slot.
        alpha: reduced-size fraction of a full data unit, in (0, 1).
        cf_max: largest full-size unit price the environment can produce.
        empty_queue_delay_increment: if set, the delay queue also grows on
            idle slots with an empty queue.
    """

    V: float = 1.0
    eps_q: float = 1.0
    eps_d: float = 1.0
    alpha: float = 0.5
    cf_max: float = 5.0
    empty_queue_delay_increment: bool = False

    def __post_init__(self):
        validate_params(self)


def validate_params(p) -> None:
    """Check every ``Params`` invariant, raising ``InvalidParams`` listing all failures."""
    problems = []
    for name in ("V", "eps_q", "eps_d", "cf_max"):
        value = getattr(p, name)
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            problems.append(f"{name} must be a finite positive number, got {value!r}")
    alpha = p.alpha
    if not (isinstance(alpha, (int, float)) and 0 < alpha < 1):
        problems.append(f"alpha must lie strictly between 0 and 1, got {alpha!r}")
    if problems:
        raise InvalidParams(problems)


@dataclass(frozen=True)
class SlotInput:
    """Environment sample observed at the start of slot ``t``."""

    t: int
    h: int
    cf: float
    cr: float
    arrival: int

    def __post_init__(self):
        if self.t < 0:
            raise InvalidTrace(f"slot index must be nonnegative, got {self.t}")
        if self.h not in (0, 1, 2):
            raise InvalidTrace(f"slot {self.t}: h must be 0, 1 or 2, got {self.h!r}")
        if self.arrival not in (0, 1):
            raise InvalidTrace(f"slot {self.t}: arrival must be 0 or 1, got {self.arrival!r}")
        if not (self.cf >= 0 and self.cr >= 0):
            raise InvalidTrace(f"slot {self.t}: prices must be nonnegative")

    def check_alpha(self, alpha: float) -> None:
        if not _close(self.cr, alpha * self.cf):
            raise InvalidTrace(
                f"slot {self.t}: cr={self.cr!r} is not alpha*cf={alpha * self.cf!r}"
            )


def _close(a: float, b: float, rel: float = 1e-12) -> bool:
    return abs(a - b) <= rel * max(abs(a), abs(b))


@dataclass(frozen=True)
class QueueState:
    """Actual backlog ``Q`` plus the quality (``Y``) and delay (``Z``) virtual queues."""

    Q: int = 0
    Y: float = 0.0
    Z: float = 0.0

    def __post_init__(self):
        if self.Q < 0 or self.Y < 0 or self.Z < 0:
            raise ValueError(f"queue lengths must be nonnegative, got {self}")


class Trace:
    """Column-stored sequence of slot inputs sharing one ``alpha``.

    Iterating yields ``SlotInput`` objects; the arrays ``h``, ``cf``, ``cr``
    and ``arrival`` are exposed for vectorised use.
    """

    def __init__(self, h, cf, cr, arrival, alpha: float):
        self.h = np.asarray(h, dtype=np.int64)
        self.cf = np.asarray(cf, dtype=np.float64)
        self.cr = np.asarray(cr, dtype=np.float64)
        self.arrival = np.asarray(arrival, dtype=np.int64)
        self.alpha = float(alpha)
        n = len(self.h)
        if not (len(self.cf) == len(self.cr) == len(self.arrival) == n):
            raise InvalidTrace("trace columns have different lengths")
        if not 0 < self.alpha < 1:
            raise InvalidTrace(f"alpha must lie strictly between 0 and 1, got {alpha!r}")
        bad = np.flatnonzero((self.h < 0) | (self.h > 2))
        if bad.size:
            raise InvalidTrace(f"slot {bad[0]}: h must be 0, 1 or 2, got {self.h[bad[0]]}")
        bad = np.flatnonzero((self.arrival != 0) & (self.arrival != 1))
        if bad.size:
            raise InvalidTrace(f"slot {bad[0]}: arrival must be 0 or 1")
        bad = np.flatnonzero(~((self.cf >= 0) & (self.cr >= 0)))
        if bad.size:
            raise InvalidTrace(f"slot {bad[0]}: prices must be nonnegative")
        expected = self.alpha * self.cf
        gap = np.abs(self.cr - expected)
        bad = np.flatnonzero(gap > 1e-12 * np.maximum(np.abs(self.cr), np.abs(expected)))
        if bad.size:
            i = bad[0]
            raise InvalidTrace(f"slot {i}: cr={self.cr[i]!r} is not alpha*cf={expected[i]!r}")

    @classmethod
    def from_slots(cls, slots: Sequence[SlotInput], alpha: float) -> "Trace":
        for i, s in enumerate(slots):
            if s.t != i:
                raise InvalidTrace(f"slot at position {i} has index {s.t}")
        return cls(
            [s.h for s in slots],
            [s.cf for s in slots],
            [s.cr for s in slots],
            [s.arrival for s in slots],
            alpha,
        )

    def __len__(self) -> int:
        return len(self.h)

    def __getitem__(self, t: int) -> SlotInput:
        if not 0 <= t < len(self):
            raise IndexError(t)
        return SlotInput(t, int(self.h[t]), float(self.cf[t]), float(self.cr[t]), int(self.arrival[t]))

    def __iter__(self) -> Iterator[SlotInput]:
        for t in range(len(self)):
            yield self[t]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Trace):
            return NotImplemented
        return (
            self.alpha == other.alpha
            and np.array_equal(self.h, other.h)
            and np.array_equal(self.cf, other.cf)
            and np.array_equal(self.cr, other.cr)
            and np.array_equal(self.arrival, other.arrival)
        )

    def __repr__(self) -> str:
        return f"Trace(slots={len(self)}, alpha={self.alpha})"
