"""Monotonic tick sources: the real nanosecond clock and scripted mocks.

The elapsed time of a sorting cycle is the physical observable; everything
that reads time goes through one of these so tests can replay exact tick
sequences from plain-text scripts.
"""

from __future__ import annotations

import time
from typing import Iterable, Sequence


class ClockError(RuntimeError):
    """Base class for runtime clock failures."""


class ScriptExhaustedError(ClockError):
    """A scripted clock was asked for more readings than its script holds."""


class DegenerateTimerError(ClockError):
    """The tick source shows no usable resolution."""


# Consecutive identical real-clock readings tolerated before declaring the
# platform timer degenerate.
STUCK_READ_LIMIT = 10_000


class MonotonicClock:
    """Platform monotonic clock, read in integer nanoseconds."""

    kind = "monotonic-ns"
    is_real = True

    def __init__(self) -> None:
        self._last = -1
        self._stuck = 0

    def now(self) -> int:
        t = time.monotonic_ns()
        if t == self._last:
            self._stuck += 1
            if self._stuck >= STUCK_READ_LIMIT:
                raise DegenerateTimerError(
                    f"monotonic clock returned {t} for {self._stuck} consecutive reads"
                )
        else:
            self._last = t
            self._stuck = 0
        return t


class ScriptedClock:
    """Replays a fixed sequence of tick readings; exhaustion is an error."""

    kind = "scripted-mock"
    is_real = False

    def __init__(self, readings: Iterable[int]) -> None:
        self._readings = [int(r) for r in readings]
        for r in self._readings:
            if r < 0:
                raise ValueError(f"tick readings must be non-negative, got {r}")
        for a, b in zip(self._readings, self._readings[1:]):
            if b < a:
                raise ValueError(f"tick readings must be non-decreasing ({a} -> {b})")
        self._pos = 0

    @classmethod
    def from_deltas(cls, deltas: Sequence[int], start: int = 0) -> "ScriptedClock":
        """Build from per-call increments: the first call returns ``start``,
        each later call returns the previous reading plus the next delta."""
        readings = [start]
        for d in deltas:
            if d < 0:
                raise ValueError(f"increments must be non-negative, got {d}")
            readings.append(readings[-1] + d)
        return cls(readings)

    def now(self) -> int:
        if self._pos >= len(self._readings):
            raise ScriptExhaustedError(
                f"clock script exhausted after {len(self._readings)} readings"
            )
        t = self._readings[self._pos]
        self._pos += 1
        return t

    def take(self, count: int) -> list[int]:
        """Consume the next ``count`` readings at once (fast-path bulk read)."""
        if self._pos + count > len(self._readings):
            raise ScriptExhaustedError(
                f"clock script has {self.remaining()} readings left, need {count}"
            )
        out = self._readings[self._pos : self._pos + count]
        self._pos += count
        return out

    def remaining(self) -> int:
        return len(self._readings) - self._pos


def load_clock_script(path) -> ScriptedClock:
    """Load a mock script: a ``mode=absolute`` or ``mode=delta`` header line,
    then one unsigned integer per line (blank lines and # comments skipped)."""
    mode = None
    values: list[int] = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if mode is None:
                if line not in ("mode=absolute", "mode=delta"):
                    raise ValueError(
                        f"clock script must start with mode=absolute or mode=delta, got {line!r}"
                    )
                mode = line.split("=", 1)[1]
                continue
            try:
                v = int(line)
            except ValueError:
                raise ValueError(f"invalid tick value in clock script: {line!r}") from None
            if v < 0:
                raise ValueError(f"tick values must be unsigned, got {v}")
            values.append(v)
    if mode is None:
        raise ValueError("clock script is empty (missing mode header)")
    if not values:
        raise ValueError("clock script holds no tick values")
    if mode == "absolute":
        return ScriptedClock(values)
    return ScriptedClock.from_deltas(values)


def resolution_probe(source, samples: int) -> int:
    """Smallest positive delta among ``samples`` back-to-back reading pairs.

    Raises DegenerateTimerError when no pair shows a positive delta.
    """
    if samples < 100:
        raise ValueError(f"resolution probe needs >= 100 samples, got {samples}")
    best = None
    for _ in range(samples):
        a = source.now()
        b = source.now()
        d = b - a
        if d > 0 and (best is None or d < best):
            best = d
    if best is None:
        raise DegenerateTimerError(f"no positive delta in {samples} reading pairs")
    return best
