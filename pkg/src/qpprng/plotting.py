"""Figure rendering for analysis reports and sweeps.

Writes PNG files next to the delimited output; matplotlib runs headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import Histogram, bin_sigma


def save_histogram_figure(hist: Histogram, path, title: str | None = None) -> None:
    """Frequency distribution of symbol values with the bin-count sigma."""
    sigma = bin_sigma(hist)
    mean = hist.total / hist.num_bins
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    x = np.arange(hist.num_bins)
    if hist.num_bins <= 32:
        ax.bar(x, hist.counts, width=0.8, color="#336699")
    else:
        ax.plot(x, hist.counts, lw=0.8, color="#336699")
    ax.axhline(mean, color="#993333", lw=1.0, ls="--", label=f"uniform mean {mean:.0f}")
    ax.set_xlabel(f"{hist.bits}-bit symbol value")
    ax.set_ylabel("count")
    ax.set_title(title or f"symbol frequencies ({hist.total} samples, sigma={sigma:.2f})")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_sweep_figure(rows: list[dict], path) -> None:
    """Entropy and chi-squared convergence versus the repetition factor.

    One line per (mode, N) series; rows missing statistics (failed sweep
    points) are skipped.
    """
    series: dict[tuple[str, int], list[dict]] = {}
    for row in rows:
        if row.get("error"):
            continue
        series.setdefault((row["mode"], row["n_array"]), []).append(row)

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.5, 4.0))
    for (mode, n), pts in sorted(series.items()):
        pts = sorted(pts, key=lambda r: r["m"])
        ms = [p["m"] for p in pts]
        ax1.plot(ms, [p["shannon_bits"] for p in pts], marker="o", label=f"{mode} N={n}")
        ax2.plot(ms, [p["chi_squared"] for p in pts], marker="o", label=f"{mode} N={n}")
    ax1.set_xlabel("repetitions per cycle")
    ax1.set_ylabel("Shannon entropy (bits/byte)")
    ax1.axhline(8.0, color="gray", lw=0.8, ls=":")
    ax2.set_xlabel("repetitions per cycle")
    ax2.set_ylabel("chi-squared (log scale)")
    ax2.set_yscale("log")
    for ax in (ax1, ax2):
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
