"""Shared test doubles and the independent stream simulator."""


def make_scripted_draw(indices):
    """Index source replaying a fixed r sequence; the 'seed' is a cursor."""
    script = list(indices)

    def draw(seed, bound):
        value = script[seed]
        assert 0 <= value <= bound, f"scripted index {value} out of [0, {bound}]"
        return seed + 1, value

    return draw


def independent_stream(mode, initial, reps, bits, seed, readings, num_symbols):
    """Direct transcription of the generation rules with its own inline LCG
    and shuffle, kept free of qpprng internals so golden comparisons have a
    second route. Returns (symbols, per-cycle seed trajectory)."""
    a, c, mask = 6364136223846793005, 1442695040888963407, (1 << 64) - 1
    pos = 0
    symbols = []
    seeds = []
    for _ in range(num_symbols):
        start = readings[pos]; pos += 1
        total = 0
        for _ in range(reps):
            arr = list(initial)
            while True:
                for j in range(len(arr) - 1, 0, -1):
                    seed = (a * seed + c) & mask
                    r = (seed >> 32) % (j + 1)
                    arr[j], arr[r] = arr[r], arr[j]
                total += 1
                if all(x < y for x, y in zip(arr, arr[1:])):
                    break
        end = readings[pos]; pos += 1
        n_mod = total % (1 << bits)
        t_mod = (end - start) % (1 << bits)
        if mode == "qpp":
            seed = (((seed << bits) & mask) ^ t_mod)
        symbols.append(t_mod if mode == "qqrng" else n_mod)
        seeds.append(seed)
    return symbols, seeds


def varied_script(num_readings):
    """Synthetic tick sequence with gaps cycling through a fixed pattern."""
    gaps = [3, 17, 5, 40, 9, 1, 28, 13, 7, 22, 11, 2]
    readings = [0]
    for i in range(num_readings - 1):
        readings.append(readings[-1] + gaps[i % len(gaps)])
    return readings
