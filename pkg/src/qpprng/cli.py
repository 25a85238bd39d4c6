"""Command-line front end.

Subcommands: ``generate`` (byte streams to files), ``analyze`` (entropy
report for a byte file), ``sweep`` ((N, m) experiment grids), ``table1``
(determinism demonstration), ``bench`` (throughput measurement).

Exit codes: 0 success, 2 validation error, 3 runtime/clock error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import platform
import sys
import time
from pathlib import Path

from . import __version__
from .analysis import analyze, build_histogram, histogram_rows, split_nibbles
from .generator import (
    GeneratorConfig,
    Mode,
    default_disordered,
    generate_bytes,
    generate_symbol,
    generate_symbols,
    pack_bytes,
    symbols_per_byte,
)
from .sorting import SortStallError
from .timesource import ClockError, MonotonicClock, load_clock_script

SCHEMA_VERSION = 1
CLOCK_ENV_VAR = "QPPRNG_CLOCK"


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise ValueError(f"{flag} expects comma-separated integers, got {text!r}") from None


def _make_clock(script_path: str | None):
    """Clock selection: --clock-script flag, then the QPPRNG_CLOCK env var
    ("real" or a script path), then the real monotonic clock."""
    if script_path is None:
        env = os.environ.get(CLOCK_ENV_VAR, "real")
        if env and env != "real":
            script_path = env
    if script_path:
        return load_clock_script(script_path), f"scripted:{script_path}"
    return MonotonicClock(), "monotonic-ns"


def _build_config(args) -> GeneratorConfig:
    if args.initial_array is not None:
        initial = tuple(_parse_int_list(args.initial_array, "--initial-array"))
        if len(initial) != args.n_array:
            raise ValueError(
                f"--initial-array has {len(initial)} elements but --n-array is {args.n_array}"
            )
    else:
        initial = default_disordered(args.n_array)
    return GeneratorConfig(
        mode=Mode.from_string(args.mode),
        reps=args.m,
        bits=args.bits,
        seed=args.seed,
        initial_array=initial,
    )


def _packing_label(bits: int) -> str:
    return "high-nibble-first" if bits == 4 else "byte-per-symbol"


def _write_sidecar(out_path: Path, config: GeneratorConfig, count: int,
                   clock_kind: str, engine: str) -> None:
    meta = {
        "schema_version": SCHEMA_VERSION,
        "kind": "stream-metadata",
        "mode": config.mode.value,
        "n_array": config.n_array,
        "m": config.reps,
        "bits": config.bits,
        "count_bytes": count,
        "seed": config.seed,
        "initial_array": list(config.initial_array),
        "clock": clock_kind,
        "packing": _packing_label(config.bits),
        "engine": engine,
        "entropy_budget_bits": config.entropy_budget_bits,
        "entropy_budget_ok": config.entropy_budget_ok,
    }
    sidecar = out_path.with_name(out_path.name + ".meta.json")
    sidecar.write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")


def cmd_generate(args) -> int:
    config = _build_config(args)
    if args.count < 0:
        raise ValueError(f"--count must be >= 0, got {args.count}")
    symbols_per_byte(config.bits)  # reject widths without a byte form early
    clock, clock_kind = _make_clock(args.clock_script)
    out_path = Path(args.out)

    if args.diagnostics:
        run = generate_symbols(config, args.count * symbols_per_byte(config.bits),
                               clock, engine=args.engine, record_elapsed=True)
        data = pack_bytes(run.symbols, config.bits)
        with open(args.diagnostics, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["cycle", "perm_count", "elapsed_ticks",
                             "perm_count_mod", "elapsed_mod"])
            for i, obs in enumerate(run.iter_observables()):
                writer.writerow([i, obs.perm_count, obs.elapsed_ticks,
                                 obs.perm_count_mod, obs.elapsed_mod])
    else:
        data = generate_bytes(config, args.count, clock, engine=args.engine)

    out_path.write_bytes(data)
    _write_sidecar(out_path, config, args.count, clock_kind, args.engine)
    print(f"wrote {len(data)} bytes to {out_path} ({config.mode.value}, "
          f"N={config.n_array}, m={config.reps}, bits={config.bits})")
    return 0


def cmd_analyze(args) -> int:
    path = Path(args.infile)
    data = path.read_bytes()
    if args.bits == 8:
        stream = data
    else:
        stream = split_nibbles(data)
    report = analyze(stream, args.bits)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "kind": "entropy-report",
        "input": str(path),
        "input_bytes": len(data),
        **report.as_dict(),
    }
    text = json.dumps(payload, indent=2)
    if args.json:
        Path(args.json).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)

    if args.histogram_csv or args.plot:
        hist = build_histogram(stream, args.bits)
        if args.histogram_csv:
            with open(args.histogram_csv, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(["symbol", "count"])
                writer.writerows(histogram_rows(hist))
        if args.plot:
            from .plotting import save_histogram_figure

            save_histogram_figure(hist, args.plot, title=f"{path.name} ({args.bits}-bit symbols)")
    return 0


SWEEP_COLUMNS = ["mode", "n_array", "m", "bits", "bytes", "shannon_bits",
                 "mcv_min_entropy_bits", "chi_squared", "chi_squared_df",
                 "sigma", "theoretical_bound_bits", "speed_kb_per_s", "error"]


def _sweep_points(args) -> list[GeneratorConfig]:
    modes = [Mode.from_string(m) for m in args.modes.split(",") if m.strip()]
    n_values = _parse_int_list(args.n_values, "--n-values")
    m_values = _parse_int_list(args.m_values, "--m-values")
    if not modes or not n_values or not m_values:
        raise ValueError("sweep needs at least one mode, one N and one m")
    if args.bytes_per_point < 5 * 256:
        raise ValueError(
            f"--bytes-per-point must be >= {5 * 256} for the chi-squared "
            f"precondition, got {args.bytes_per_point}"
        )
    configs = []
    for mode in sorted(modes, key=lambda m: m.value):
        for n in sorted(n_values):
            for m in sorted(m_values):
                bits = args.bits if args.bits else (4 if n <= 4 else 8)
                configs.append(GeneratorConfig(
                    mode=mode, reps=m, bits=bits, seed=args.seed,
                    initial_array=default_disordered(n),
                ))
    return configs


def cmd_sweep(args) -> int:
    configs = _sweep_points(args)  # validates every point before generating
    rows = []
    for config in configs:
        row = {
            "mode": config.mode.value,
            "n_array": config.n_array,
            "m": config.reps,
            "bits": config.bits,
            "bytes": args.bytes_per_point,
            "theoretical_bound_bits": symbols_per_byte(config.bits) * config.entropy_budget_bits,
            "error": "",
        }
        try:
            clock, _ = _make_clock(args.clock_script)
            t0 = time.perf_counter()
            data = generate_bytes(config, args.bytes_per_point, clock, engine=args.engine)
            elapsed = time.perf_counter() - t0
            report = analyze(data, 8)
            row.update(
                shannon_bits=report.shannon_bits,
                mcv_min_entropy_bits=report.mcv_min_entropy_bits,
                chi_squared=report.chi_squared,
                chi_squared_df=report.chi_squared_df,
                sigma=report.sigma,
                speed_kb_per_s=(args.bytes_per_point / 1024.0) / elapsed if elapsed > 0 else 0.0,
            )
        except (ValueError, ClockError, SortStallError) as exc:
            row["error"] = str(exc)
            data = None
        rows.append(row)
        if args.figures and data is not None:
            from .plotting import save_histogram_figure

            fig_dir = Path(args.figures)
            fig_dir.mkdir(parents=True, exist_ok=True)
            hist = build_histogram(data, 8)
            name = f"hist_{row['mode']}_N{row['n_array']}_m{row['m']}.png"
            save_histogram_figure(
                hist, fig_dir / name,
                title=f"{row['mode']} N={row['n_array']} m={row['m']}",
            )

    with open(args.out_csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=SWEEP_COLUMNS, restval="")
        writer.writeheader()
        writer.writerows(rows)
    if args.out_json:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "kind": "sweep",
            "spec": {
                "modes": args.modes, "n_values": args.n_values,
                "m_values": args.m_values, "bytes_per_point": args.bytes_per_point,
                "seed": args.seed,
            },
            "rows": rows,
        }
        Path(args.out_json).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    if args.figures:
        from .plotting import save_sweep_figure

        fig_dir = Path(args.figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
        save_sweep_figure(rows, fig_dir / "sweep_convergence.png")

    failed = sum(1 for r in rows if r["error"])
    print(f"sweep finished: {len(rows) - failed}/{len(rows)} points ok -> {args.out_csv}")
    return 0


def cmd_table1(args) -> int:
    if args.pads < 1 or args.runs < 1:
        raise ValueError("--pads and --runs must both be >= 1")
    base = GeneratorConfig(
        mode=Mode.DQRNG, reps=args.m, bits=args.bits, seed=args.seed,
        initial_array=default_disordered(args.n_array),
    )
    header = ["pad", "seed", "n_mod"] + [f"t_mod_{j + 1}" for j in range(args.runs)]
    widths = [6, 12, 6] + [8] * args.runs
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for i in range(args.pads):
        pad_seed = (args.seed + i) & ((1 << 64) - 1)
        n_mods = []
        t_mods = []
        for _ in range(args.runs):
            clock, _ = _make_clock(args.clock_script)
            _, obs, _ = generate_symbol(base, pad_seed, clock)
            n_mods.append(obs.perm_count_mod)
            t_mods.append(obs.elapsed_mod)
        if len(set(n_mods)) != 1:
            raise RuntimeError(
                f"deterministic observable varied across runs of pad {i}: {n_mods}"
            )
        cells = [f"pad_{i + 1:02d}", str(pad_seed), str(n_mods[0])] + [str(t) for t in t_mods]
        print("  ".join(c.ljust(w) for c, w in zip(cells, widths)))
    return 0


def cmd_bench(args) -> int:
    if (args.bytes is None) == (args.seconds is None):
        raise ValueError("supply exactly one of --bytes or --seconds")
    if args.bytes is not None and args.bytes <= 0:
        raise ValueError(f"--bytes budget must be positive, got {args.bytes}")
    if args.seconds is not None and args.seconds <= 0:
        raise ValueError(f"--seconds budget must be positive, got {args.seconds}")
    config = _build_config(args)
    clock, clock_kind = _make_clock(args.clock_script)

    total = 0
    t0 = time.perf_counter()
    if args.bytes is not None:
        generate_bytes(config, args.bytes, clock, engine=args.engine)
        total = args.bytes
    else:
        chunk = 65536
        while time.perf_counter() - t0 < args.seconds:
            generate_bytes(config, chunk, clock, engine=args.engine)
            total += chunk
    elapsed = time.perf_counter() - t0

    report = {
        "schema_version": SCHEMA_VERSION,
        "kind": "bench",
        "mode": config.mode.value,
        "n_array": config.n_array,
        "m": config.reps,
        "bits": config.bits,
        "bytes": total,
        "elapsed_s": elapsed,
        "speed_kb_per_s": (total / 1024.0) / elapsed if elapsed > 0 else 0.0,
        "engine": args.engine,
        "clock": clock_kind,
        "platform": {
            "platform": platform.platform(),
            "machine": platform.machine(),
            "python": platform.python_version(),
        },
        "note": "throughput is hardware- and load-specific; figures from other machines are not comparable",
    }
    text = json.dumps(report, indent=2)
    if args.json:
        Path(args.json).write_text(text + "\n", encoding="utf-8")
    print(f"{report['speed_kb_per_s']:.1f} KB/s  ({config.mode.value}, "
          f"N={config.n_array}, m={config.reps}, bits={config.bits}, "
          f"{total} bytes in {elapsed:.2f}s)")
    return 0


def _add_config_flags(p: argparse.ArgumentParser, default_bits: int = 4) -> None:
    p.add_argument("--mode", default="dqrng", help="dqrng, qqrng, or qpp")
    p.add_argument("--n-array", type=int, default=4, help="array length N")
    p.add_argument("--m", type=int, default=4, help="repetitions per cycle")
    p.add_argument("--bits", type=int, default=default_bits, help="output symbol width")
    p.add_argument("--seed", type=int, default=1, help="initial 64-bit seed")
    p.add_argument("--initial-array", default=None,
                   help="comma-separated start array (default: N-1,0,1,..,N-2)")
    p.add_argument("--clock-script", default=None,
                   help="mock clock script file (default: real clock, or $QPPRNG_CLOCK)")
    p.add_argument("--engine", default="auto", choices=["auto", "reference", "numba"],
                   help="generation engine")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpprng",
        description="Random-permutation-sorting RNG and entropy analysis toolkit",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a byte stream to a file")
    _add_config_flags(g)
    g.add_argument("--count", type=int, required=True, help="number of bytes")
    g.add_argument("--out", required=True, help="output file (headerless binary)")
    g.add_argument("--diagnostics", default=None,
                   help="write per-cycle observables CSV to this path")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", help="entropy report for a byte file")
    a.add_argument("--in", dest="infile", required=True, help="input byte file")
    a.add_argument("--bits", type=int, default=8, choices=[4, 8],
                   help="symbol width the file was produced with")
    a.add_argument("--json", default=None, help="write the JSON report here instead of stdout")
    a.add_argument("--histogram-csv", default=None, help="write symbol,count rows here")
    a.add_argument("--plot", default=None, help="render the frequency figure to this PNG")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sweep", help="run an (N, m) experiment grid")
    s.add_argument("--modes", default="dqrng", help="comma-separated mode list")
    s.add_argument("--n-values", default="4", help="comma-separated array lengths")
    s.add_argument("--m-values", default="1,2,3,4", help="comma-separated repetition counts")
    s.add_argument("--bytes-per-point", type=int, default=1 << 20)
    s.add_argument("--bits", type=int, default=None, choices=[4, 8],
                   help="symbol width (default: 4 for N<=4, else 8)")
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--clock-script", default=None)
    s.add_argument("--engine", default="auto", choices=["auto", "reference", "numba"])
    s.add_argument("--out-csv", required=True)
    s.add_argument("--out-json", default=None)
    s.add_argument("--figures", default=None,
                   help="directory for per-point histogram figures and the convergence figure")
    s.set_defaults(func=cmd_sweep)

    t = sub.add_parser("table1", help="determinism demo: fixed pads, repeated cycles")
    t.add_argument("--pads", type=int, default=10, help="number of pad seeds")
    t.add_argument("--runs", type=int, default=10, help="repeated runs per pad")
    t.add_argument("--n-array", type=int, default=4)
    t.add_argument("--m", type=int, default=4)
    t.add_argument("--bits", type=int, default=4)
    t.add_argument("--seed", type=int, default=1, help="seed of the first pad")
    t.add_argument("--clock-script", default=None)
    t.set_defaults(func=cmd_table1)

    b = sub.add_parser("bench", help="measure generation throughput")
    _add_config_flags(b)
    b.add_argument("--bytes", type=int, default=None, help="byte budget")
    b.add_argument("--seconds", type=float, default=None, help="time budget")
    b.add_argument("--json", default=None, help="write the JSON report here")
    b.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ClockError, SortStallError, RuntimeError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
