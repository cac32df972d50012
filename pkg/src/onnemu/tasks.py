"""Pattern retrieval workloads: encode, corrupt, judge, benchmark.

Encoding maps a black pixel to phase 0 and a white pixel to phase
2^(p-1) (180 degrees).  Decoding re-zeroes all phases on oscillator 0
and classifies each relative phase to the nearer of {0 deg, 180 deg};
the two equidistant points (90 and 270 degrees) classify as black.
Oscillator 0 therefore always decodes black; a network that settled
into the complement of the target is counted correct by the judge,
since a global phase flip is physically indistinguishable.

Corruption flips round-half-away-from-zero(fraction * pixels) distinct
pixels chosen by the pinned SplitMix64 generator, so every trial is
reproducible from its 64-bit seed alone.

The benchmark derives each trial's corruption seed from the master
seed and the (pattern, level, trial) coordinates, and aggregates only
counts and sums.  Trial execution order, including process-parallel
execution, therefore cannot change the report.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from onnemu.core import BinaryPattern, NetworkConfig, SpinVector, WeightMatrix
from onnemu.datasets import load_dataset
from onnemu.engine import engine_init, run_until_settled
from onnemu.rng import SplitMix64, derive_seed
from onnemu.training import (
    StabilityReport,
    TrainingParams,
    format_stability_report,
    quantize_matrix,
    train_do1,
)


def pattern_to_phases(pattern: BinaryPattern, phase_bits: int) -> np.ndarray:
    """Black -> phase 0, white -> phase 2^(p-1)."""
    if phase_bits < 1:
        raise ValueError(f"p >= 1 required, got p={phase_bits}")
    half = 1 << (phase_bits - 1)
    return np.where(pattern.pixels == 1, 0, half).astype(np.int64)


def phases_to_pattern(
    phases, phase_bits: int, width: int, height: int
) -> BinaryPattern:
    """Nearest of {0, 180 deg} on relative phases; exact quarter-turn
    ties go to black."""
    period = 1 << phase_bits
    half = period // 2
    q = np.asarray(phases, dtype=np.int64) % period
    rel = (q - q[0]) % period
    dist_black = np.minimum(rel, period - rel)
    dist_white = np.abs(rel - half)
    pixels = (dist_black <= dist_white).astype(np.uint8)
    return BinaryPattern(width, height, pixels)


@dataclass(frozen=True)
class CorruptionSpec:
    fraction: float
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.fraction <= 1.0:
            raise ValueError(f"fraction must lie in [0, 1], got {self.fraction}")


def flip_count(fraction: float, n_pixels: int) -> int:
    """Pixels to flip: round half away from zero (2.25 -> 2, 2.5 -> 3)."""
    return int(math.floor(fraction * n_pixels + 0.5))


def corrupt(pattern: BinaryPattern, spec: CorruptionSpec) -> BinaryPattern:
    """Flip the computed count of distinct seeded-random pixels."""
    k = flip_count(spec.fraction, pattern.n_pixels)
    positions = SplitMix64(spec.seed).sample_distinct(pattern.n_pixels, k)
    pixels = pattern.pixels.copy()
    pixels[positions] ^= 1
    return BinaryPattern(pattern.width, pattern.height, pixels)


def judge(retrieved: BinaryPattern, target: BinaryPattern) -> bool:
    """Correct iff retrieved equals the target or its exact complement."""
    if (retrieved.width, retrieved.height) != (target.width, target.height):
        raise ValueError(
            f"dimension mismatch: {retrieved.width}x{retrieved.height} vs "
            f"{target.width}x{target.height}"
        )
    return bool(
        np.array_equal(retrieved.pixels, target.pixels)
        or np.array_equal(retrieved.pixels, 1 - target.pixels)
    )


@dataclass
class CellResult:
    label: str
    pattern_index: int
    fraction: float
    trials: int = 0
    correct: int = 0
    timeouts: int = 0
    settle_cycles_total: int = 0

    @property
    def accuracy_pct(self) -> float:
        return 100.0 * self.correct / self.trials if self.trials else 0.0

    @property
    def settled_trials(self) -> int:
        return self.trials - self.timeouts

    @property
    def mean_settle_cycles(self) -> float | None:
        if self.settled_trials == 0:
            return None
        return self.settle_cycles_total / self.settled_trials

    def merge(self, other: "CellResult") -> None:
        self.trials += other.trials
        self.correct += other.correct
        self.timeouts += other.timeouts
        self.settle_cycles_total += other.settle_cycles_total


@dataclass
class RetrievalReport:
    config: NetworkConfig
    master_seed: int
    trials_per_cell: int
    levels: list[float]
    labels: list[str]
    cells: list[CellResult]
    stability: StabilityReport
    max_periods: int = 1000
    stability_window: int = 3

    def cell(self, pattern_index: int, fraction: float) -> CellResult:
        for c in self.cells:
            if c.pattern_index == pattern_index and c.fraction == fraction:
                return c
        raise KeyError((pattern_index, fraction))


# Worker globals set once per process by _init_worker; trials only ship
# their (pattern, level, range) coordinates, not the weight matrix.
_WORKER: dict = {}


def _init_worker(payload: dict) -> None:
    _WORKER.update(payload)


def _run_trials(args: tuple) -> tuple:
    p_idx, l_idx, start, count = args
    config: NetworkConfig = _WORKER["config"]
    weights: WeightMatrix = _WORKER["weights"]
    pattern: BinaryPattern = _WORKER["patterns"][p_idx]
    fraction: float = _WORKER["levels"][l_idx]
    master_seed: int = _WORKER["master_seed"]
    max_periods: int = _WORKER["max_periods"]
    window: int = _WORKER["stability_window"]

    correct = timeouts = cycles_total = 0
    for trial in range(start, start + count):
        seed = derive_seed(master_seed, p_idx, l_idx, trial)
        probe = corrupt(pattern, CorruptionSpec(fraction, seed))
        phases = pattern_to_phases(probe, config.phase_bits)
        try:
            engine = engine_init(config, weights, phases)
            outcome = run_until_settled(engine, max_periods, window)
        except Exception:
            timeouts += 1
            continue
        if outcome.timed_out:
            timeouts += 1
            continue
        cycles_total += outcome.cycles_to_settle
        decoded = phases_to_pattern(
            outcome.final_phases, config.phase_bits, pattern.width, pattern.height
        )
        if judge(decoded, pattern):
            correct += 1
    return p_idx, l_idx, count, correct, timeouts, cycles_total


def run_benchmark(
    dataset: str,
    config: NetworkConfig,
    levels=(0.10, 0.25, 0.50),
    trials: int = 1000,
    master_seed: int = 1,
    training_params: TrainingParams = TrainingParams(),
    max_periods: int = 1000,
    stability_window: int = 3,
    workers: int = 1,
    chunk: int = 100,
) -> RetrievalReport:
    """Train once, then sweep every (pattern, level, trial) cell."""
    labels, patterns = load_dataset(dataset)
    n_pixels = patterns[0].n_pixels
    if any(p.n_pixels != n_pixels for p in patterns):
        raise ValueError("dataset patterns must share one grid size")
    if config.n_oscillators != n_pixels:
        raise ValueError(
            f"config has N={config.n_oscillators} but patterns have "
            f"{n_pixels} pixels"
        )
    spins = [SpinVector.from_pattern(p) for p in patterns]
    result = train_do1(spins, training_params)
    weights, stability = quantize_matrix(
        result.weights, config.weight_bits, patterns=spins
    )

    levels = list(levels)
    cells = [
        CellResult(label=labels[p], pattern_index=p, fraction=f)
        for p in range(len(patterns))
        for f in levels
    ]
    by_key = {(c.pattern_index, c.fraction): c for c in cells}

    payload = {
        "config": config,
        "weights": weights,
        "patterns": patterns,
        "levels": levels,
        "master_seed": master_seed,
        "max_periods": max_periods,
        "stability_window": stability_window,
    }
    tasks = [
        (p, l, start, min(chunk, trials - start))
        for p in range(len(patterns))
        for l in range(len(levels))
        for start in range(0, trials, chunk)
    ]
    if workers > 1:
        with ProcessPoolExecutor(
            max_workers=workers, initializer=_init_worker, initargs=(payload,)
        ) as pool:
            results = list(pool.map(_run_trials, tasks))
    else:
        _init_worker(payload)
        results = [_run_trials(t) for t in tasks]

    for p_idx, l_idx, count, correct, timeouts, cycles_total in results:
        cell = by_key[(p_idx, levels[l_idx])]
        cell.trials += count
        cell.correct += correct
        cell.timeouts += timeouts
        cell.settle_cycles_total += cycles_total

    return RetrievalReport(
        config=config,
        master_seed=master_seed,
        trials_per_cell=trials,
        levels=levels,
        labels=labels,
        cells=cells,
        stability=stability,
        max_periods=max_periods,
        stability_window=stability_window,
    )


def _config_echo_lines(report: RetrievalReport) -> list[str]:
    c = report.config
    return [
        f"# architecture={c.architecture.value} n_oscillators={c.n_oscillators} "
        f"weight_bits={c.weight_bits} phase_bits={c.phase_bits} "
        f"hybrid_sampling={c.hybrid_sampling.value} "
        f"logic_frequency_hz={c.logic_frequency_hz!r}",
        f"# master_seed={report.master_seed} trials={report.trials_per_cell} "
        f"levels={','.join(repr(f) for f in report.levels)} "
        f"max_periods={report.max_periods} "
        f"stability_window={report.stability_window}",
    ]


def report_to_csv(report: RetrievalReport) -> str:
    """One row per pattern x level, with a config-echo comment header."""
    lines = _config_echo_lines(report)
    lines.append(
        "pattern,corruption_pct,trials,correct,accuracy_pct,"
        "mean_settle_cycles,timeouts"
    )
    for cell in report.cells:
        mean = cell.mean_settle_cycles
        lines.append(
            f"{cell.label},{cell.fraction * 100:g},{cell.trials},{cell.correct},"
            f"{cell.accuracy_pct!r},{'' if mean is None else repr(mean)},"
            f"{cell.timeouts}"
        )
    return "\n".join(lines) + "\n"


def report_to_text(report: RetrievalReport) -> str:
    """Two human-readable tables: accuracy %, then mean settle cycles."""
    lines = _config_echo_lines(report)
    level_heads = [f"{f * 100:g}%" for f in report.levels]
    width = max(8, max(len(lbl) for lbl in report.labels) + 2)
    col = 12

    def row(cells_fmt: list[str], head: str) -> str:
        return head.ljust(width) + "".join(s.rjust(col) for s in cells_fmt)

    lines.append("")
    lines.append("Retrieval accuracy (%)")
    lines.append(row(level_heads, "pattern"))
    for p, label in enumerate(report.labels):
        vals = [f"{report.cell(p, f).accuracy_pct:.1f}" for f in report.levels]
        lines.append(row(vals, label))
    lines.append("")
    lines.append("Mean settle time (oscillation cycles, timeouts excluded)")
    lines.append(row(level_heads, "pattern"))
    for p, label in enumerate(report.labels):
        vals = []
        for f in report.levels:
            mean = report.cell(p, f).mean_settle_cycles
            vals.append("-" if mean is None else f"{mean:.2f}")
        lines.append(row(vals, label))
    lines.append("")
    lines.append("Training stability:")
    lines.append(format_stability_report(report.stability).rstrip("\n"))
    return "\n".join(lines) + "\n"
