"""Random permutation sorting: shuffle a small disordered array until it
sorts itself, counting the shuffles.

One "cycle" repeats that ``reps`` times from a fresh copy of the initial
array, accumulating a single shuffle total, and brackets the whole loop
with two clock readings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .lcg import next_int

# A repetition that spins this long without sorting indicates a degenerate
# index source (cycling without covering the permutation group); fail loudly
# instead of hanging.
SHUFFLE_CAP = 10_000_000

DrawFn = Callable[[int, int], tuple[int, int]]


class SortStallError(RuntimeError):
    """A single repetition exceeded SHUFFLE_CAP shuffles without sorting."""


def validate_work_array(elements: Sequence[int]) -> tuple[int, ...]:
    """Check that elements form a permutation of 0..N-1 with 2 <= N <= 8."""
    arr = tuple(elements)
    n = len(arr)
    if not 2 <= n <= 8:
        raise ValueError(f"array length must be in [2, 8], got {n}")
    if sorted(arr) != list(range(n)):
        raise ValueError(f"array must be a permutation of 0..{n - 1}, got {arr}")
    return arr


def is_sorted(elements: Sequence[int]) -> bool:
    """True iff elements are in strictly ascending order."""
    return all(a < b for a, b in zip(elements, elements[1:]))


def permute_array(arr: list[int], seed: int, draw: DrawFn = next_int) -> int:
    """One Fisher-Yates pass over ``arr`` in place; returns the advanced seed.

    For j from N-1 down to 1, draws r in [0, j] and swaps positions j and r,
    so the result is uniform over all N! orderings when the draws are uniform.
    ``draw`` is replaceable for tests that script the index sequence.
    """
    for j in range(len(arr) - 1, 0, -1):
        seed, r = draw(seed, j)
        arr[j], arr[r] = arr[r], arr[j]
    return seed


@dataclass(frozen=True)
class SortingCycleResult:
    """Raw observables of one cycle: total shuffles and elapsed clock ticks."""

    perm_count: int
    elapsed_ticks: int


def run_sorting_cycle(
    initial: Sequence[int],
    reps: int,
    seed: int,
    clock,
    draw: DrawFn = next_int,
) -> tuple[SortingCycleResult, int]:
    """Run one sorting cycle of ``reps`` repetitions.

    Each repetition restarts from a fresh copy of ``initial`` and shuffles
    until sorted; shuffle counts accumulate into one total. The clock is
    read once before and once after the repetition loop.
    """
    arr = list(validate_work_array(initial))
    if is_sorted(arr):
        raise ValueError("initial array must not already be sorted")
    if reps < 1:
        raise ValueError(f"repetition count must be >= 1, got {reps}")

    start = clock.now()
    count = 0
    for _ in range(reps):
        work = arr.copy()
        spins = 0
        while True:
            seed = permute_array(work, seed, draw)
            count += 1
            spins += 1
            if is_sorted(work):
                break
            if spins >= SHUFFLE_CAP:
                raise SortStallError(
                    f"no sort after {spins} shuffles (len={len(arr)})"
                )
    end = clock.now()
    return SortingCycleResult(perm_count=count, elapsed_ticks=end - start), seed


def shuffle_census(seed: int, num_shuffles: int, n: int = 4) -> dict[tuple[int, ...], int]:
    """Shuffle a fresh identity array ``num_shuffles`` times; count outcomes.

    Used for uniformity checks: with a sound index source every one of the
    N! orderings should appear with frequency near 1/N!. Returns a mapping
    from ordering to occurrence count. Uses the fast kernel when available.
    """
    validate_work_array(range(n)[::-1])  # reuse the N bounds check
    if num_shuffles < 1:
        raise ValueError("num_shuffles must be >= 1")

    from . import kernels

    if kernels.HAVE_NUMBA:
        counts = kernels.shuffle_census(seed, num_shuffles, n)
        out: dict[tuple[int, ...], int] = {}
        for code, c in enumerate(counts):
            if c:
                digits = []
                x = code
                for _ in range(n):
                    digits.append(x % n)
                    x //= n
                out[tuple(digits)] = int(c)
        return out

    out = {}
    for _ in range(num_shuffles):
        work = list(range(n))
        seed = permute_array(work, seed)
        key = tuple(work)
        out[key] = out.get(key, 0) + 1
    return out
