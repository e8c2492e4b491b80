"""Seeded environment traces and their CSV representation.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014), implemented
here so that a seed reproduces the same trace bit for bit on any platform
and in any language. Each slot consumes three draws, in order: spectrum
state, full-size price, arrival.

File layout::

    # alpha=0.5
    t,h,cf,cr,arrival
    0,2,3.0417...,1.5208...,1

Prices are written with ``repr`` (shortest string that round-trips exactly).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import InvalidTrace, Trace

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """64-bit SplitMix generator producing integers and doubles in [0, 1)."""

    def __init__(self, seed: int):
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_double(self) -> float:
        # top 53 bits -> uniform on [0, 1) with 2**-53 spacing
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


@dataclass(frozen=True)
class TraceConfig:
    """Settings for ``generate``; defaults follow the reference experiment."""

    slots: int = 10_000
    seed: int = 0
    h_probs: tuple[float, float, float] = (1 / 3, 1 / 3, 1 / 3)
    price_min: float = 0.5
    price_max: float = 5.0
    arrival_prob: float = 1.0
    alpha: float = 0.5

    def __post_init__(self):
        if self.slots < 1:
            raise ValueError(f"slots must be positive, got {self.slots}")
        if len(self.h_probs) != 3 or any(q < 0 for q in self.h_probs):
            raise ValueError(f"h_probs must be three nonnegative numbers, got {self.h_probs}")
        if abs(sum(self.h_probs) - 1) > 1e-9:
            raise ValueError(f"h_probs must sum to 1, got {sum(self.h_probs)}")
        if not 0 <= self.price_min <= self.price_max:
            raise ValueError("need 0 <= price_min <= price_max")
        if not 0 <= self.arrival_prob <= 1:
            raise ValueError(f"arrival_prob must lie in [0, 1], got {self.arrival_prob}")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie strictly between 0 and 1, got {self.alpha}")


def generate(config: TraceConfig) -> Trace:
    rng = SplitMix64(config.seed)
    n = config.slots
    p0, p1, _ = config.h_probs
    cut0, cut1 = p0, p0 + p1
    span = config.price_max - config.price_min
    h = np.empty(n, dtype=np.int64)
    cf = np.empty(n, dtype=np.float64)
    arrival = np.empty(n, dtype=np.int64)
    for t in range(n):
        u = rng.next_double()
        h[t] = 0 if u < cut0 else (1 if u < cut1 else 2)
        cf[t] = config.price_min + span * rng.next_double()
        arrival[t] = 1 if rng.next_double() < config.arrival_prob else 0
    return Trace(h, cf, config.alpha * cf, arrival, config.alpha)


def format_trace(trace: Trace) -> str:
    buf = io.StringIO()
    buf.write(f"# alpha={trace.alpha!r}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "h", "cf", "cr", "arrival"])
    for t in range(len(trace)):
        w.writerow([t, int(trace.h[t]), repr(float(trace.cf[t])), repr(float(trace.cr[t])),
                    int(trace.arrival[t])])
    return buf.getvalue()


def write_trace(trace: Trace, path) -> None:
    if len(trace) == 0:
        raise ValueError("refusing to write an empty trace")
    Path(path).write_text(format_trace(trace), encoding="utf-8", newline="")


def parse_trace(text: str, source: str = "<trace>") -> Trace:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# alpha="):
        raise InvalidTrace(f"{source}:1: expected '# alpha=<value>' header")
    try:
        alpha = float(lines[0][len("# alpha="):])
    except ValueError:
        raise InvalidTrace(f"{source}:1: unreadable alpha {lines[0]!r}") from None
    if len(lines) < 2 or lines[1].strip() != "t,h,cf,cr,arrival":
        raise InvalidTrace(f"{source}:2: expected column header 't,h,cf,cr,arrival'")

    h, cf, cr, arrival = [], [], [], []
    for lineno, row in enumerate(csv.reader(lines[2:]), start=3):
        if not row:
            continue
        if len(row) != 5:
            raise InvalidTrace(f"{source}:{lineno}: expected 5 fields, got {len(row)}")
        try:
            t, hv, cfv, crv, av = int(row[0]), int(row[1]), float(row[2]), float(row[3]), int(row[4])
        except ValueError as exc:
            raise InvalidTrace(f"{source}:{lineno}: {exc}") from None
        if t != len(h):
            raise InvalidTrace(f"{source}:{lineno}: slot index {t}, expected {len(h)}")
        if hv not in (0, 1, 2):
            raise InvalidTrace(f"{source}:{lineno}: h must be 0, 1 or 2, got {hv}")
        if av not in (0, 1):
            raise InvalidTrace(f"{source}:{lineno}: arrival must be 0 or 1, got {av}")
        if not (math.isfinite(cfv) and math.isfinite(crv)):
            raise InvalidTrace(f"{source}:{lineno}: non-finite price")
        if abs(crv - alpha * cfv) > 1e-12 * max(abs(crv), abs(alpha * cfv)):
            raise InvalidTrace(
                f"{source}:{lineno}: cr={crv!r} is not alpha*cf={alpha * cfv!r} (alpha={alpha!r})"
            )
        h.append(hv)
        cf.append(cfv)
        cr.append(crv)
        arrival.append(av)
    if not h:
        raise InvalidTrace(f"{source}: no slots")
    return Trace(h, cf, cr, arrival, alpha)


def read_trace(path) -> Trace:
    path = Path(path)
    return parse_trace(path.read_text(encoding="utf-8"), source=str(path))
