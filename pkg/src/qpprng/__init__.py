"""qpprng: a software true random number generator that harvests entropy
from the timing jitter of random permutation sorting, plus the statistical
toolkit used to study its entropy convergence.
"""

__version__ = "0.1.0"

from .analysis import (
    EntropyReport,
    Histogram,
    analyze,
    bin_sigma,
    build_histogram,
    chi_squared_uniform,
    mcv_min_entropy,
    sample_skewness,
    shannon_entropy,
)
from .generator import (
    CycleObservables,
    GeneratorConfig,
    Mode,
    SymbolRun,
    default_disordered,
    generate_bytes,
    generate_symbol,
    generate_symbols,
    pack_bytes,
    theoretical_bound,
)
from .lcg import lcg_step, next_int, reseed
from .sorting import (
    SortingCycleResult,
    SortStallError,
    is_sorted,
    permute_array,
    run_sorting_cycle,
    shuffle_census,
)
from .timesource import (
    ClockError,
    DegenerateTimerError,
    MonotonicClock,
    ScriptExhaustedError,
    ScriptedClock,
    load_clock_script,
    resolution_probe,
)

__all__ = [
    "__version__",
    "EntropyReport", "Histogram", "analyze", "bin_sigma", "build_histogram",
    "chi_squared_uniform", "mcv_min_entropy", "sample_skewness", "shannon_entropy",
    "CycleObservables", "GeneratorConfig", "Mode", "SymbolRun",
    "default_disordered", "generate_bytes", "generate_symbol",
    "generate_symbols", "pack_bytes", "theoretical_bound",
    "lcg_step", "next_int", "reseed",
    "SortingCycleResult", "SortStallError", "is_sorted", "permute_array",
    "run_sorting_cycle", "shuffle_census",
    "ClockError", "DegenerateTimerError", "MonotonicClock",
    "ScriptExhaustedError", "ScriptedClock", "load_clock_script",
    "resolution_probe",
]
