"""Compiled fast path for bulk symbol generation.

Mirrors the pure-Python reference arithmetic exactly (same LCG constants,
same draw order, same reseed rule); the test suite asserts bit-for-bit
equality between the two routes. Falls back gracefully when numba is
missing: HAVE_NUMBA is False and callers stay on the reference path.
"""

from __future__ import annotations

import time

import numpy as np

try:
    from numba import njit, objmode

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def deco(fn):
            return fn

        return deco


MODE_DQRNG = 0
MODE_QQRNG = 1
MODE_QPP = 2

CLOCK_NONE = 0
CLOCK_REAL = 1
CLOCK_SCRIPTED = 2

ERR_OK = 0
ERR_STALL = 1

_MULT = np.uint64(6364136223846793005)
_INC = np.uint64(1442695040888963407)
_HI = np.uint64(32)
_SHUFFLE_CAP = 10_000_000


@njit(cache=True)
def _run_cycles(initial, reps, bits, mode, seed_in, clock_mode, ticks,
                symbols, perm_counts, elapsed):
    n = initial.shape[0]
    work = np.empty(n, dtype=np.int64)
    seed = np.uint64(seed_in)
    bitmask = np.uint64((1 << bits) - 1)
    num = symbols.shape[0]
    tick_i = 0
    start = np.int64(0)
    end = np.int64(0)
    for i in range(num):
        if clock_mode == CLOCK_REAL:
            with objmode(start="int64"):
                start = time.monotonic_ns()
        elif clock_mode == CLOCK_SCRIPTED:
            start = ticks[tick_i]
            tick_i += 1
        total = np.int64(0)
        for _ in range(reps):
            for j in range(n):
                work[j] = initial[j]
            spins = 0
            while True:
                for j in range(n - 1, 0, -1):
                    seed = _MULT * seed + _INC
                    r = (seed >> _HI) % np.uint64(j + 1)
                    tmp = work[j]
                    work[j] = work[r]
                    work[r] = tmp
                total += 1
                spins += 1
                ok = True
                for j in range(n - 1):
                    if work[j] > work[j + 1]:
                        ok = False
                        break
                if ok:
                    break
                if spins >= _SHUFFLE_CAP:
                    return seed, ERR_STALL
        if clock_mode == CLOCK_REAL:
            with objmode(end="int64"):
                end = time.monotonic_ns()
        elif clock_mode == CLOCK_SCRIPTED:
            end = ticks[tick_i]
            tick_i += 1
        n_mod = np.uint64(total) & bitmask
        t_mod = np.uint64(end - start) & bitmask
        if mode == MODE_QPP:
            seed = (seed << np.uint64(bits)) ^ t_mod
        if mode == MODE_QQRNG:
            symbols[i] = t_mod
        else:
            symbols[i] = n_mod
        perm_counts[i] = total
        elapsed[i] = end - start
    return seed, ERR_OK


@njit(cache=True)
def _shuffle_census(seed_in, num_shuffles, n, counts):
    work = np.empty(n, dtype=np.int64)
    seed = np.uint64(seed_in)
    for _ in range(num_shuffles):
        for j in range(n):
            work[j] = j
        for j in range(n - 1, 0, -1):
            seed = _MULT * seed + _INC
            r = (seed >> _HI) % np.uint64(j + 1)
            tmp = work[j]
            work[j] = work[r]
            work[r] = tmp
        code = 0
        for j in range(n - 1, -1, -1):
            code = code * n + work[j]
        counts[code] += 1
    return seed


def run_cycles(initial, reps, bits, mode_code, seed, num_symbols,
               clock_mode, ticks=None):
    """Generate ``num_symbols`` cycles; returns (symbols, perm_counts,
    elapsed, final_seed). Raises on a stalled repetition."""
    from .sorting import SortStallError

    arr = np.asarray(initial, dtype=np.int64)
    symbols = np.empty(num_symbols, dtype=np.uint16)
    perm_counts = np.empty(num_symbols, dtype=np.int64)
    elapsed = np.empty(num_symbols, dtype=np.int64)
    if ticks is None:
        ticks = np.empty(0, dtype=np.int64)
    else:
        ticks = np.asarray(ticks, dtype=np.int64)
    final_seed, err = _run_cycles(
        arr, reps, bits, mode_code, np.uint64(seed), clock_mode, ticks,
        symbols, perm_counts, elapsed,
    )
    if err == ERR_STALL:
        raise SortStallError(f"no sort after {_SHUFFLE_CAP} shuffles (len={arr.size})")
    return symbols, perm_counts, elapsed, int(final_seed)


def shuffle_census(seed, num_shuffles, n):
    """Counts of shuffle outcomes indexed by base-n digit code."""
    counts = np.zeros(n**n, dtype=np.int64)
    _shuffle_census(np.uint64(seed), num_shuffles, n, counts)
    return counts
