"""The three operating modes and symbol-to-byte assembly.

Every output symbol comes from one sorting cycle, which yields two
observables: the shuffle total (algorithmic, reproducible) and the elapsed
clock ticks (physical, jitter-bearing). Reduced mod 2**bits these become
the candidate symbols:

* ``dqrng``  emits the modular shuffle count under a fixed seed; the byte
  stream is a pure function of (config, seed) and bitwise reproducible.
* ``qqrng``  emits the modular elapsed time; on a real clock the stream is
  non-deterministic, under a scripted clock it is a pure function of the
  script.
* ``qpp``    emits the modular shuffle count but folds each cycle's modular
  elapsed time back into the seed (shift left by the bit width, then XOR),
  so live jitter steers an otherwise deterministic generator.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .lcg import MASK64, reseed
from .sorting import is_sorted, run_sorting_cycle, validate_work_array
from .timesource import MonotonicClock, ScriptedClock


class Mode(enum.Enum):
    DQRNG = "dqrng"
    QQRNG = "qqrng"
    QPP = "qpp"

    @classmethod
    def from_string(cls, name: str) -> "Mode":
        try:
            return cls(name.lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown mode {name!r} (expected one of: {valid})") from None


def default_disordered(n: int) -> tuple[int, ...]:
    """Canonical non-sorted start array: the largest element rotated to the
    front, e.g. (3, 0, 1, 2) for n=4. Any non-sorted permutation works; the
    statistics do not depend on the particular disorder."""
    if n < 2:
        raise ValueError(f"array length must be >= 2, got {n}")
    return (n - 1, *range(n - 1))


@dataclass(frozen=True)
class GeneratorConfig:
    """Immutable description of one generator instance."""

    mode: Mode = Mode.DQRNG
    reps: int = 4
    bits: int = 4
    seed: int = 1
    initial_array: tuple[int, ...] = (3, 0, 1, 2)

    def __post_init__(self) -> None:
        arr = validate_work_array(self.initial_array)
        object.__setattr__(self, "initial_array", arr)
        if is_sorted(arr):
            raise ValueError("initial array must not already be sorted")
        if self.reps < 1:
            raise ValueError(f"repetitions per cycle must be >= 1, got {self.reps}")
        if not 1 <= self.bits <= 16:
            raise ValueError(f"output bit width must be in [1, 16], got {self.bits}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if not isinstance(self.mode, Mode):
            object.__setattr__(self, "mode", Mode.from_string(self.mode))

    @property
    def n_array(self) -> int:
        return len(self.initial_array)

    @property
    def entropy_budget_bits(self) -> float:
        """Per-cycle search-space entropy, log2(reps * N!)."""
        return math.log2(self.reps * math.factorial(self.n_array))

    @property
    def entropy_budget_ok(self) -> bool:
        """Whether the symbol width stays within the per-cycle budget."""
        return self.bits <= self.entropy_budget_bits


@dataclass(frozen=True)
class CycleObservables:
    """Raw and modular observables of one cycle."""

    perm_count: int
    elapsed_ticks: int
    perm_count_mod: int
    elapsed_mod: int


@dataclass
class SymbolRun:
    """Bulk result of a generation run, one entry per cycle.

    ``elapsed`` is None when the run skipped timing capture (dqrng on the
    fast path discards the time observable unless asked to record it).
    """

    symbols: np.ndarray               # uint16, the emitted symbols
    perm_counts: np.ndarray           # int64, raw shuffle totals
    elapsed: np.ndarray | None        # int64, raw elapsed ticks per cycle
    final_seed: int
    bits: int = field(default=4)

    def iter_observables(self) -> Iterator[CycleObservables]:
        if self.elapsed is None:
            raise ValueError("run captured no timing; generate with record_elapsed=True")
        mask = (1 << self.bits) - 1
        for c, t in zip(self.perm_counts, self.elapsed):
            yield CycleObservables(int(c), int(t), int(c) & mask, int(t) & mask)


def theoretical_bound(n_array: int, reps: int) -> float:
    """Per-byte entropy ceiling for two 4-bit cycles: 2 * log2(reps * N!)."""
    if n_array < 2:
        raise ValueError(f"array length must be >= 2, got {n_array}")
    if reps < 1:
        raise ValueError(f"repetitions must be >= 1, got {reps}")
    return 2.0 * math.log2(reps * math.factorial(n_array))


def generate_symbol(config: GeneratorConfig, seed: int, clock) -> tuple[int, CycleObservables, int]:
    """Run one cycle; returns (symbol, observables, new_seed).

    The symbol is the modular elapsed time in qqrng mode and the modular
    shuffle count otherwise. In qpp mode the seed is additionally reseeded
    with the modular elapsed time after the cycle.
    """
    result, seed = run_sorting_cycle(config.initial_array, config.reps, seed, clock)
    mask = (1 << config.bits) - 1
    n_mod = result.perm_count & mask
    t_mod = result.elapsed_ticks & mask
    obs = CycleObservables(result.perm_count, result.elapsed_ticks, n_mod, t_mod)
    if config.mode is Mode.QPP:
        seed = reseed(seed, t_mod, config.bits)
    symbol = t_mod if config.mode is Mode.QQRNG else n_mod
    return symbol, obs, seed


_MODE_CODES = {Mode.DQRNG: kernels.MODE_DQRNG, Mode.QQRNG: kernels.MODE_QQRNG,
               Mode.QPP: kernels.MODE_QPP}


def _resolve_engine(engine: str, clock) -> str:
    if engine not in ("auto", "reference", "numba"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "numba" and not kernels.HAVE_NUMBA:
        raise ValueError("numba engine requested but numba is not available")
    kernel_ok = isinstance(clock, (MonotonicClock, ScriptedClock))
    if engine == "numba" and not kernel_ok:
        raise ValueError("numba engine supports only the monotonic or scripted clocks")
    if engine == "auto":
        return "numba" if (kernels.HAVE_NUMBA and kernel_ok) else "reference"
    return engine


def generate_symbols(
    config: GeneratorConfig,
    num_symbols: int,
    clock=None,
    *,
    seed: int | None = None,
    engine: str = "auto",
    record_elapsed: bool = False,
) -> SymbolRun:
    """Generate ``num_symbols`` symbols, threading PRNG and clock state
    across cycles. ``engine`` selects the compiled fast path ("numba"),
    the pure-Python reference ("reference"), or the best available
    ("auto"); both routes produce identical streams for identical inputs.
    ``record_elapsed`` forces per-cycle timing capture even in dqrng mode.
    """
    if num_symbols < 0:
        raise ValueError(f"symbol count must be >= 0, got {num_symbols}")
    if clock is None:
        clock = MonotonicClock()
    if seed is None:
        seed = config.seed

    chosen = _resolve_engine(engine, clock)
    if chosen == "numba":
        if isinstance(clock, ScriptedClock):
            ticks = clock.take(2 * num_symbols)
            clock_mode = kernels.CLOCK_SCRIPTED
        else:
            ticks = None
            need_time = config.mode is not Mode.DQRNG or record_elapsed
            clock_mode = kernels.CLOCK_REAL if need_time else kernels.CLOCK_NONE
        symbols, counts, elapsed, final_seed = kernels.run_cycles(
            config.initial_array, config.reps, config.bits,
            _MODE_CODES[config.mode], seed, num_symbols, clock_mode, ticks,
        )
        if clock_mode == kernels.CLOCK_NONE:
            elapsed = None
        return SymbolRun(symbols, counts, elapsed, final_seed, bits=config.bits)

    symbols = np.empty(num_symbols, dtype=np.uint16)
    counts = np.empty(num_symbols, dtype=np.int64)
    elapsed = np.empty(num_symbols, dtype=np.int64)
    for i in range(num_symbols):
        value, obs, seed = generate_symbol(config, seed, clock)
        symbols[i] = value
        counts[i] = obs.perm_count
        elapsed[i] = obs.elapsed_ticks
    return SymbolRun(symbols, counts, elapsed, seed, bits=config.bits)


def pack_bytes(symbols: np.ndarray, bits: int) -> bytes:
    """Assemble symbols into bytes.

    8-bit symbols map one-to-one; 4-bit symbols pack in pairs with the
    first symbol in the high nibble. Other widths have no byte form and
    are rejected (export them as raw symbol streams instead).
    """
    if bits == 8:
        return np.asarray(symbols, dtype=np.uint8).tobytes()
    if bits == 4:
        sym = np.asarray(symbols)
        if sym.size % 2:
            raise ValueError("4-bit packing needs an even number of symbols")
        return ((sym[0::2].astype(np.uint8) << 4) | sym[1::2].astype(np.uint8)).tobytes()
    raise ValueError(f"byte assembly requires a 4- or 8-bit symbol width, got {bits}")


def symbols_per_byte(bits: int) -> int:
    if bits == 8:
        return 1
    if bits == 4:
        return 2
    raise ValueError(f"byte assembly requires a 4- or 8-bit symbol width, got {bits}")


def generate_bytes(
    config: GeneratorConfig,
    count: int,
    clock=None,
    *,
    seed: int | None = None,
    engine: str = "auto",
) -> bytes:
    """Generate exactly ``count`` bytes in the configured mode."""
    if count < 0:
        raise ValueError(f"byte count must be >= 0, got {count}")
    per = symbols_per_byte(config.bits)
    run = generate_symbols(config, count * per, clock, seed=seed, engine=engine)
    return pack_bytes(run.symbols, config.bits)
