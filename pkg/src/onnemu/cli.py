"""Command-line entry points: train / run / bench / scale / serve.

Every subcommand prints an effective-config block before any other
output; a run is fully reconstructable from that block (execution
details like --parallel, which cannot change results, are omitted
from it).  Fixed seeds make every subcommand byte-reproducible.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from onnemu.core import (
    Architecture,
    HybridSampling,
    NetworkConfig,
    format_config,
    format_pattern,
    parse_config,
    parse_pattern,
    parse_weights_csv,
    format_weights_csv,
    validate_config,
)
from onnemu.costmodel import (
    DeviceProfile,
    ZYNQ_7020,
    area_frequency_tradeoff,
    curve_to_csv,
    default_calibration,
)
from onnemu.datasets import load_dataset
from onnemu.engine import engine_init, format_trace, run_until_settled
from onnemu.tasks import (
    pattern_to_phases,
    phases_to_pattern,
    report_to_csv,
    report_to_text,
    run_benchmark,
)
from onnemu.training import (
    TrainingParams,
    format_stability_report,
    quantize_matrix,
    train_do1,
)
from onnemu.core import SpinVector


def _echo(pairs: dict) -> None:
    print("effective-config:")
    for key, value in pairs.items():
        print(f"{key} = {value}")
    print()


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, default=None,
                   help="config file (key = value lines); flags override it")
    p.add_argument("--arch", choices=["recurrent", "hybrid"], default=None,
                   help="architecture (default hybrid)")
    p.add_argument("--hybrid-mode", choices=["pipelined", "aligned"], default=None,
                   help="hybrid amplitude sampling (default pipelined)")
    p.add_argument("--phase-bits", type=int, default=None,
                   help="phase resolution bits p (default 4)")
    p.add_argument("--weight-bits", type=int, default=None,
                   help="weight precision bits b (default 5)")


def _effective_config(args, n_oscillators: int) -> NetworkConfig:
    """defaults <- config file <- explicit flags, then validate."""
    base = dict(
        architecture=Architecture.HYBRID,
        weight_bits=5,
        phase_bits=4,
        hybrid_sampling=HybridSampling.PIPELINED,
        logic_frequency_hz=50e6,
    )
    if args.config is not None:
        file_cfg = parse_config(args.config.read_text())
        if file_cfg.n_oscillators != n_oscillators:
            raise SystemExit(
                f"config file has N={file_cfg.n_oscillators} but the input "
                f"needs N={n_oscillators}"
            )
        base.update(
            architecture=file_cfg.architecture,
            weight_bits=file_cfg.weight_bits,
            phase_bits=file_cfg.phase_bits,
            hybrid_sampling=file_cfg.hybrid_sampling,
            logic_frequency_hz=file_cfg.logic_frequency_hz,
        )
    if args.arch is not None:
        base["architecture"] = Architecture(args.arch)
    if args.hybrid_mode is not None:
        base["hybrid_sampling"] = HybridSampling(args.hybrid_mode)
    if args.phase_bits is not None:
        base["phase_bits"] = args.phase_bits
    if args.weight_bits is not None:
        base["weight_bits"] = args.weight_bits
    return validate_config(NetworkConfig(n_oscillators=n_oscillators, **base))


def cmd_train(args) -> int:
    labels, patterns = load_dataset(args.dataset)
    n = patterns[0].n_pixels
    if any(p.n_pixels != n for p in patterns):
        raise SystemExit("dataset patterns have inconsistent sizes")
    weight_bits = args.weight_bits if args.weight_bits is not None else 5
    params = TrainingParams(
        stability_threshold=args.threshold, max_epochs=args.max_epochs
    )
    _echo({
        "subcommand": "train",
        "dataset": args.dataset,
        "patterns": ",".join(labels),
        "n_oscillators": n,
        "weight_bits": weight_bits,
        "stability_threshold": args.threshold,
        "max_epochs": args.max_epochs,
        "out": args.out,
    })
    spins = [SpinVector.from_pattern(p) for p in patterns]
    result = train_do1(spins, params)
    weights, report = quantize_matrix(result.weights, weight_bits, patterns=spins)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "weights.csv").write_text(format_weights_csv(weights))
    (out / "stability.txt").write_text(format_stability_report(report))
    print(f"converged = {result.converged} (epochs = {result.epochs})")
    print(f"wrote {out / 'weights.csv'} and {out / 'stability.txt'}")
    if not result.converged and not args.allow_unstable:
        print("training did not converge (use --allow-unstable to accept)",
              file=sys.stderr)
        return 1
    return 0


def cmd_run(args) -> int:
    pattern = parse_pattern(Path(args.pattern).read_text())
    config = _effective_config(args, pattern.n_pixels)
    weights = parse_weights_csv(Path(args.weights).read_text(), config.weight_bits)
    if weights.n != pattern.n_pixels:
        raise SystemExit(
            f"weights are {weights.n}x{weights.n} but the pattern has "
            f"{pattern.n_pixels} pixels"
        )
    _echo({
        "subcommand": "run",
        "weights": args.weights,
        "pattern": args.pattern,
        **{k: v for k, v in
           (line.split(" = ") for line in format_config(config).strip().splitlines())},
        "max_periods": args.max_periods,
        "stability_window": args.window,
        "trace": args.trace or "",
    })
    phases = pattern_to_phases(pattern, config.phase_bits)
    engine = engine_init(config, weights, phases,
                         record_trace=args.trace is not None)
    outcome = run_until_settled(engine, args.max_periods, args.window)
    decoded = phases_to_pattern(
        outcome.final_phases, config.phase_bits, pattern.width, pattern.height
    )
    print(f"settled = {outcome.settled}")
    print(f"timed_out = {outcome.timed_out}")
    print(f"cycles_to_settle = {outcome.cycles_to_settle}")
    print("decoded pattern:")
    print(format_pattern(decoded), end="")
    if args.trace is not None:
        Path(args.trace).write_text(format_trace(engine))
        print(f"trace written to {args.trace}")
    return 0


def _parse_levels(text: str) -> list[float]:
    levels = []
    for tok in text.split(","):
        v = float(tok)
        if v > 1.0:
            v /= 100.0
        if not 0.0 <= v <= 1.0:
            raise SystemExit(f"corruption level out of range: {tok}")
        levels.append(v)
    if not levels:
        raise SystemExit("at least one corruption level required")
    return levels


def cmd_bench(args) -> int:
    labels, patterns = load_dataset(args.dataset)
    n = patterns[0].n_pixels
    config = _effective_config(args, n)
    levels = _parse_levels(args.levels)
    _echo({
        "subcommand": "bench",
        "dataset": args.dataset,
        "patterns": ",".join(labels),
        **{k: v for k, v in
           (line.split(" = ") for line in format_config(config).strip().splitlines())},
        "levels": ",".join(repr(v) for v in levels),
        "trials": args.trials,
        "seed": args.seed,
        "max_periods": args.max_periods,
        "stability_window": args.window,
        "stability_threshold": args.threshold,
        "max_epochs": args.max_epochs,
        "out": args.out,
    })
    report = run_benchmark(
        args.dataset,
        config,
        levels=levels,
        trials=args.trials,
        master_seed=args.seed,
        training_params=TrainingParams(
            stability_threshold=args.threshold, max_epochs=args.max_epochs
        ),
        max_periods=args.max_periods,
        stability_window=args.window,
        workers=args.parallel,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "bench_report.csv").write_text(report_to_csv(report))
    (out / "bench_report.txt").write_text(report_to_text(report))
    print(report_to_text(report), end="")
    print(f"wrote {out / 'bench_report.csv'} and {out / 'bench_report.txt'}")
    return 0


def _parse_range(text: str) -> list[int]:
    """'8:512' = powers of two; '8:512:8' = linear step; '48,64' = list."""
    if "," in text:
        return [int(t) for t in text.split(",")]
    parts = text.split(":")
    if len(parts) == 2:
        lo, hi = int(parts[0]), int(parts[1])
        ns, n = [], 1
        while n < lo:
            n *= 2
        while n <= hi:
            ns.append(n)
            n *= 2
        if not ns:
            raise SystemExit(f"empty range {text!r}")
        return ns
    if len(parts) == 3:
        lo, hi, step = (int(p) for p in parts)
        return list(range(lo, hi + 1, step))
    raise SystemExit(f"cannot parse range {text!r}")


def _load_profile(path: Path | None) -> DeviceProfile:
    if path is None:
        return ZYNQ_7020
    values = {}
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, val = line.partition("=")
        values[key.strip()] = float(val.strip())
    return DeviceProfile(**values)


def cmd_scale(args) -> int:
    arch = Architecture(args.arch if args.arch is not None else "hybrid")
    ns = _parse_range(args.range)
    phase_bits = args.phase_bits if args.phase_bits is not None else 4
    weight_bits = args.weight_bits if args.weight_bits is not None else 5
    profile = _load_profile(args.profile)
    _echo({
        "subcommand": "scale",
        "architecture": arch.value,
        "range": ",".join(str(n) for n in ns),
        "phase_bits": phase_bits,
        "weight_bits": weight_bits,
        "f_logic_hz": args.f_logic,
        "overhead_divisor": args.overhead_divisor,
        "profile": str(args.profile) if args.profile else "builtin Zynq-7020",
        "out": args.out or "stdout",
    })
    curve = area_frequency_tradeoff(
        arch,
        ns,
        profile=profile,
        calibration=default_calibration(arch),
        weight_bits=weight_bits,
        phase_bits=phase_bits,
        f_logic=args.f_logic,
        overhead_divisor=args.overhead_divisor,
    )
    csv = curve_to_csv(curve)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        target = out / f"scale_{arch.value}.csv"
        target.write_text(csv)
        print(f"wrote {target}")
    else:
        print(csv, end="")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from onnemu.service import create_app

    bind = args.bind or os.environ.get("ONN_BIND", "127.0.0.1")
    port = args.port if args.port is not None else int(os.environ.get("ONN_PORT", "8000"))
    _echo({
        "subcommand": "serve",
        "bind": bind,
        "port": port,
        "max_oscillators": args.max_oscillators,
    })
    app = create_app(max_oscillators=args.max_oscillators)
    uvicorn.run(app, host=bind, port=port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onnemu",
        description="Digital oscillatory neural network emulator",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("train", help="learn and quantize coupling weights")
    p.add_argument("dataset", help="built-in size key (3x3, 5x4, 7x6, 10x10, "
                                   "22x22), a pattern file, or a directory")
    p.add_argument("--weight-bits", type=int, default=None)
    p.add_argument("--threshold", type=float, default=1.0,
                   help="stability threshold (default 1.0)")
    p.add_argument("--max-epochs", type=int, default=1000)
    p.add_argument("--allow-unstable", action="store_true",
                   help="exit 0 even if training did not converge")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("run", help="single retrieval from a pattern file")
    p.add_argument("--weights", required=True, help="weight CSV path")
    p.add_argument("--pattern", required=True, help="initial pattern file")
    _add_config_flags(p)
    p.add_argument("--max-periods", type=int, default=1000)
    p.add_argument("--window", type=int, default=3,
                   help="consecutive identical period samples to settle")
    p.add_argument("--trace", default=None, help="write a trace dump here")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("bench", help="retrieval benchmark over a dataset")
    p.add_argument("dataset")
    _add_config_flags(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--levels", default="0.1,0.25,0.5",
                   help="comma-separated corruption fractions (or percents)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--parallel", type=int, default=1,
                   help="worker processes; never changes results")
    p.add_argument("--max-periods", type=int, default=1000)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--threshold", type=float, default=1.0)
    p.add_argument("--max-epochs", type=int, default=1000)
    p.add_argument("--out", default=".", help="report output directory")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("scale", help="hardware cost and frequency curves")
    p.add_argument("--arch", choices=["recurrent", "hybrid"], default=None)
    p.add_argument("--range", default="8:512",
                   help="N values: 'lo:hi' powers of two, 'lo:hi:step', or list")
    p.add_argument("--phase-bits", type=int, default=None)
    p.add_argument("--weight-bits", type=int, default=None)
    p.add_argument("--f-logic", type=float, default=50e6,
                   help="logic clock in Hz (default 50e6)")
    p.add_argument("--overhead-divisor", type=float, default=1.0)
    p.add_argument("--profile", type=Path, default=None,
                   help="device profile file (key = value); default Zynq-7020")
    p.add_argument("--out", default=None, help="output directory (else stdout)")
    p.set_defaults(func=cmd_scale)

    p = sub.add_parser("serve", help="start the HTTP emulation service")
    p.add_argument("--bind", default=None, help="bind address (or ONN_BIND)")
    p.add_argument("--port", type=int, default=None, help="port (or ONN_PORT)")
    p.add_argument("--max-oscillators", type=int, default=2048,
                   help="reject sessions needing more oscillators than this")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
