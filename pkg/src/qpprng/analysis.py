"""Statistical measures for generated streams.

Shannon entropy, chi-squared against the uniform distribution, the
SP 800-90B most-common-value min-entropy estimate, the standard deviation
of bin counts, and sample skewness for raw observable distributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Sequence

import numpy as np

# z-quantile for the 99% upper confidence bound used by the
# most-common-value estimator.
MCV_Z = 2.576

MCV_MIN_TOTAL = 1000
CHI2_MIN_EXPECTED = 5.0


@dataclass(frozen=True)
class Histogram:
    """Occurrence counts of 2**bits symbol values."""

    counts: np.ndarray
    total: int
    bits: int

    @property
    def num_bins(self) -> int:
        return 1 << self.bits


def build_histogram(stream, bits: int) -> Histogram:
    """Exact per-symbol occurrence counts.

    ``stream`` may be bytes or any integer sequence; every value must be
    below 2**bits.
    """
    if not 1 <= bits <= 16:
        raise ValueError(f"bit width must be in [1, 16], got {bits}")
    if isinstance(stream, (bytes, bytearray, memoryview)):
        data = np.frombuffer(stream, dtype=np.uint8)
    else:
        data = np.asarray(stream)
    bins = 1 << bits
    if data.size and (data.min() < 0 or data.max() >= bins):
        bad = data.min() if data.min() < 0 else data.max()
        raise ValueError(f"symbol {bad} out of range for {bits}-bit histogram")
    counts = np.bincount(data.astype(np.int64), minlength=bins) if data.size else np.zeros(bins, dtype=np.int64)
    return Histogram(counts=counts.astype(np.int64), total=int(data.size), bits=bits)


def split_nibbles(data: bytes) -> np.ndarray:
    """Explode a byte stream into 4-bit symbols, high nibble first."""
    b = np.frombuffer(data, dtype=np.uint8)
    out = np.empty(2 * b.size, dtype=np.uint8)
    out[0::2] = b >> 4
    out[1::2] = b & 0x0F
    return out


def shannon_entropy(hist: Histogram) -> float:
    """Average unpredictability in bits per symbol: -sum p*log2(p)."""
    if hist.total <= 0:
        raise ValueError("cannot compute entropy of an empty histogram")
    p = hist.counts[hist.counts > 0] / hist.total
    return float(-(p * np.log2(p)).sum())


def chi_squared_uniform(hist: Histogram) -> float:
    """Chi-squared statistic against the uniform distribution.

    Degrees of freedom are 2**bits - 1; the expected count per bin must be
    at least 5 for the statistic to be meaningful.
    """
    expected = hist.total / hist.num_bins
    if expected < CHI2_MIN_EXPECTED:
        raise ValueError(
            f"chi-squared needs >= {CHI2_MIN_EXPECTED} expected per bin "
            f"({hist.num_bins * CHI2_MIN_EXPECTED:.0f} samples), got {hist.total}"
        )
    return float(((hist.counts - expected) ** 2 / expected).sum())


def mcv_min_entropy(hist: Histogram) -> float:
    """Most-common-value min-entropy estimate in bits per symbol.

    With modal frequency p_hat, the estimate is -log2 of the upper 99%
    confidence bound p_u = min(1, p_hat + 2.576*sqrt(p_hat*(1-p_hat)/total)).
    """
    if hist.total < MCV_MIN_TOTAL:
        raise ValueError(f"MCV estimate needs >= {MCV_MIN_TOTAL} samples, got {hist.total}")
    p_hat = float(hist.counts.max()) / hist.total
    p_u = min(1.0, p_hat + MCV_Z * math.sqrt(p_hat * (1.0 - p_hat) / hist.total))
    return -math.log2(p_u)


def bin_sigma(hist: Histogram) -> float:
    """Population standard deviation of the bin counts.

    For an ideal uniform source this approaches sqrt(E*(1 - 1/2**bits))
    with E the expected count per bin (63.87 for 2**20 bytes in 256 bins).
    """
    if hist.total <= 0:
        raise ValueError("cannot compute bin sigma of an empty histogram")
    return float(hist.counts.std())


def sample_skewness(values: Sequence[int] | np.ndarray) -> float:
    """Standardized third central moment g1 of raw counts or ticks."""
    x = np.asarray(values, dtype=np.float64)
    if x.size < 3:
        raise ValueError(f"skewness needs >= 3 values, got {x.size}")
    m = x.mean()
    m2 = ((x - m) ** 2).mean()
    if m2 == 0.0:
        raise ValueError("skewness is undefined for zero variance")
    m3 = ((x - m) ** 3).mean()
    return float(m3 / m2**1.5)


@dataclass(frozen=True)
class EntropyReport:
    """All stream statistics for one byte/symbol stream."""

    shannon_bits: float
    mcv_min_entropy_bits: float
    chi_squared: float
    chi_squared_df: int
    sigma: float
    total: int
    bits: int

    def as_dict(self) -> dict:
        return asdict(self)


def analyze(stream, bits: int) -> EntropyReport:
    """Build the full EntropyReport for a stream of ``bits``-wide symbols."""
    hist = build_histogram(stream, bits)
    return analyze_histogram(hist)


def analyze_histogram(hist: Histogram) -> EntropyReport:
    return EntropyReport(
        shannon_bits=shannon_entropy(hist),
        mcv_min_entropy_bits=mcv_min_entropy(hist),
        chi_squared=chi_squared_uniform(hist),
        chi_squared_df=hist.num_bins - 1,
        sigma=bin_sigma(hist),
        total=hist.total,
        bits=hist.bits,
    )


def histogram_rows(hist: Histogram) -> list[tuple[int, int]]:
    """(symbol, count) rows for CSV export."""
    return [(i, int(c)) for i, c in enumerate(hist.counts)]
