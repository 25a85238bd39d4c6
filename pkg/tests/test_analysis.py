import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpprng.analysis import (
    EntropyReport,
    analyze,
    bin_sigma,
    build_histogram,
    chi_squared_uniform,
    histogram_rows,
    mcv_min_entropy,
    sample_skewness,
    shannon_entropy,
    split_nibbles,
)


def uniform_reference_bytes(n, seed=0):
    return np.random.default_rng(seed).integers(0, 256, size=n, dtype=np.uint8).tobytes()


# ---------------------------------------------------------------------------
# Histograms


def test_build_histogram_counts():
    h = build_histogram([0, 0, 1], 1)
    assert list(h.counts) == [2, 1]
    assert h.total == 3


def test_build_histogram_empty():
    h = build_histogram(b"", 8)
    assert h.total == 0
    assert h.counts.sum() == 0
    assert h.num_bins == 256


def test_build_histogram_rejects_out_of_range():
    with pytest.raises(ValueError):
        build_histogram([4], 2)
    with pytest.raises(ValueError):
        build_histogram([-1], 4)
    with pytest.raises(ValueError):
        build_histogram(b"\x00", 0)


def test_uniform_reference_bins_within_six_sigma():
    # Binomial oracle: per-bin sigma = sqrt(2^20/256 * 255/256) = 63.87.
    h = build_histogram(uniform_reference_bytes(1 << 20, seed=7), 8)
    sigma = math.sqrt(4096 * 255 / 256)
    assert sigma == pytest.approx(63.87, abs=0.01)
    assert np.abs(h.counts - 4096).max() < 6 * sigma


def test_split_nibbles_high_first():
    assert list(split_nibbles(b"\x91\x0f")) == [9, 1, 0, 15]


# ---------------------------------------------------------------------------
# Shannon entropy


def test_shannon_uniform_and_point_mass():
    flat = build_histogram(bytes(range(256)) * 4, 8)
    assert shannon_entropy(flat) == pytest.approx(8.0, abs=1e-12)
    point = build_histogram(b"\x07" * 1024, 8)
    assert shannon_entropy(point) == 0.0
    with pytest.raises(ValueError):
        shannon_entropy(build_histogram(b"", 8))


# ---------------------------------------------------------------------------
# Chi-squared


def test_chi_squared_exactly_equal_bins_is_zero():
    h = build_histogram(bytes(range(256)) * 5, 8)
    assert chi_squared_uniform(h) == 0.0


def test_chi_squared_point_mass_closed_form():
    # All mass in one of 256 bins: sum (O-E)^2/E = 255 * L.
    L = 2048
    h = build_histogram(b"\x00" * L, 8)
    assert chi_squared_uniform(h) == pytest.approx(255 * L, rel=1e-12)


def test_chi_squared_insufficient_sample():
    with pytest.raises(ValueError):
        chi_squared_uniform(build_histogram(b"\x00" * 100, 8))


def test_chi_squared_calibration_on_ideal_source():
    # 200 independent 2^20-byte uniform streams: mean chi2 near df = 255.
    rng = np.random.default_rng(123)
    values = []
    for _ in range(200):
        counts = np.bincount(rng.integers(0, 256, size=1 << 20, dtype=np.uint8),
                             minlength=256)
        expected = (1 << 20) / 256
        values.append(((counts - expected) ** 2 / expected).sum())
    assert 240 <= np.mean(values) <= 270


# ---------------------------------------------------------------------------
# MCV min-entropy


def test_mcv_single_symbol_stream_is_zero():
    h = build_histogram(b"\x42" * 2000, 8)
    assert mcv_min_entropy(h) == 0.0


def test_mcv_fifty_fifty_closed_form():
    h = build_histogram([0] * 500_000 + [1] * 500_000, 1)
    expected = -math.log2(0.5 + 2.576 * math.sqrt(0.25 / 1_000_000))
    assert mcv_min_entropy(h) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(0.9963, abs=5e-4)


def test_mcv_insufficient_sample():
    with pytest.raises(ValueError):
        mcv_min_entropy(build_histogram(b"\x00" * 999, 8))


# ---------------------------------------------------------------------------
# Bin sigma and skewness


def test_bin_sigma_equal_bins_is_zero():
    h = build_histogram(bytes(range(256)) * 4096, 8)
    assert bin_sigma(h) == 0.0


def test_bin_sigma_ideal_uniform_near_binomial_value():
    h = build_histogram(uniform_reference_bytes(1 << 20, seed=3), 8)
    assert bin_sigma(h) == pytest.approx(63.87, abs=12.0)


def test_sample_skewness():
    assert sample_skewness([1, 2, 3]) == pytest.approx(0.0, abs=1e-12)
    assert sample_skewness([1, 1, 1, 10]) > 0
    with pytest.raises(ValueError):
        sample_skewness([1, 2])
    with pytest.raises(ValueError):
        sample_skewness([5, 5, 5])


# ---------------------------------------------------------------------------
# Report assembly and invariants


def test_analyze_report_fields():
    report = analyze(uniform_reference_bytes(1 << 17, seed=9), 8)
    assert isinstance(report, EntropyReport)
    assert report.total == 1 << 17
    assert report.bits == 8
    assert report.chi_squared_df == 255
    d = report.as_dict()
    assert set(d) == {"shannon_bits", "mcv_min_entropy_bits", "chi_squared",
                      "chi_squared_df", "sigma", "total", "bits"}


def test_histogram_rows_csv_shape():
    rows = histogram_rows(build_histogram([1, 1, 3], 2))
    assert rows == [(0, 0), (1, 2), (2, 0), (3, 1)]


symbol_streams = st.lists(st.integers(0, 15), min_size=1024, max_size=4096)


@settings(max_examples=25, deadline=None)
@given(stream=symbol_streams)
def test_entropy_ordering_invariant(stream):
    h = build_histogram(stream, 4)
    assert 0.0 <= mcv_min_entropy(h) <= shannon_entropy(h) + 1e-12
    assert shannon_entropy(h) <= 4.0 + 1e-12


@settings(max_examples=25, deadline=None)
@given(stream=symbol_streams, shift=st.integers(1, 15))
def test_statistics_invariant_under_relabeling(stream, shift):
    relabeled = [(s + shift) % 16 for s in stream]
    a = build_histogram(stream, 4)
    b = build_histogram(relabeled, 4)
    assert shannon_entropy(a) == pytest.approx(shannon_entropy(b), rel=1e-12)
    assert mcv_min_entropy(a) == pytest.approx(mcv_min_entropy(b), rel=1e-12)
    assert bin_sigma(a) == pytest.approx(bin_sigma(b), rel=1e-12)
    if a.total >= 5 * 16:
        assert chi_squared_uniform(a) == pytest.approx(chi_squared_uniform(b), rel=1e-12)


def test_duplicating_a_stream_preserves_entropy_and_doubles_counts():
    stream = uniform_reference_bytes(4096, seed=5)
    single = build_histogram(stream, 8)
    double = build_histogram(stream + stream, 8)
    assert np.array_equal(double.counts, 2 * single.counts)
    assert shannon_entropy(double) == pytest.approx(shannon_entropy(single), rel=1e-12)
