"""64-bit linear congruential generator used to drive permutation choices.

State is a plain Python int in [0, 2**64); every operation is pure
(state in, state out), so sequences are reproducible by construction.
"""

MASK64 = (1 << 64) - 1

# Knuth's MMIX constants: full period modulo 2**64 (odd increment,
# multiplier = 5 mod 8), one multiply-add per step.
MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407

# Indices are drawn from the high half of the state: the low bits of a
# power-of-two-modulus LCG have short periods and would stall the
# shuffle-until-sorted loop.
MAX_BOUND = (1 << 32) - 1


def lcg_step(seed: int) -> int:
    """Advance the state one step: (a*seed + c) mod 2**64."""
    return (MULTIPLIER * seed + INCREMENT) & MASK64


def next_int(seed: int, bound: int) -> tuple[int, int]:
    """Advance the state and draw an index in [0, bound].

    Returns (new_seed, index). The index comes from the high 32 bits of
    the new state reduced mod (bound+1); bound+1 must fit in 32 bits.
    """
    if bound < 0:
        raise ValueError(f"bound must be non-negative, got {bound}")
    if bound > MAX_BOUND:
        raise ValueError(f"bound + 1 must be <= 2**32, got bound={bound}")
    seed = lcg_step(seed)
    return seed, (seed >> 32) % (bound + 1)


def reseed(seed: int, jitter: int, bits: int) -> int:
    """Fold a jitter value into the state: ((seed << bits) mod 2**64) ^ jitter."""
    if not 1 <= bits <= 32:
        raise ValueError(f"bits must be in [1, 32], got {bits}")
    if not 0 <= jitter < (1 << bits):
        raise ValueError(f"jitter must be in [0, 2**{bits}), got {jitter}")
    return ((seed << bits) & MASK64) ^ jitter
