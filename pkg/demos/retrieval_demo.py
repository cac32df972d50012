"""Associative retrieval end to end: train, corrupt, settle, decode.

Trains coupling weights on the built-in 3x3 letters, flips a quarter of
one letter's pixels, loads the corrupted pattern into the oscillator
phases, and lets the network settle.  The settled relative phases decode
back to the stored letter (or its complement -- a network of phases has
no absolute black/white, only separations, so both are correct recalls).
"""

import numpy as np

from onnemu import (
    Architecture,
    CorruptionSpec,
    HybridSampling,
    NetworkConfig,
    TrainingParams,
    corrupt,
    engine_init,
    judge,
    pattern_to_phases,
    phases_to_pattern,
    quantize_matrix,
    relative_phases,
    run_until_settled,
    train_do1,
)
from onnemu.datasets import builtin_dataset


def render(pattern, label=""):
    rows = ["".join("#" if v else "." for v in row) for row in pattern.rows()]
    print(f"  {label}")
    for r in rows:
        print(f"    {r}")


# --- 1. Train on the letter set ----------------------------------------
labels, patterns = builtin_dataset("3x3")
result = train_do1(patterns, TrainingParams())
print(f"trained on {labels}: converged={result.converged} "
      f"after {result.epochs} epochs")

weights, report = quantize_matrix(result.weights, weight_bits=5, patterns=patterns)
print(f"quantized to 5 bits, scale={report.scale:g}, "
      f"all patterns stable: {report.all_stable}")
print("integer weight matrix:")
print(np.asarray(weights.entries))

# --- 2. Corrupt a stored letter ----------------------------------------
target = patterns[0]
spec = CorruptionSpec(fraction=0.25, seed=7)
probe = corrupt(target, spec)
render(target, f"stored '{labels[0]}'")
render(probe, "probe (25% pixels flipped)")

# --- 3. Run the network -------------------------------------------------
config = NetworkConfig(
    architecture=Architecture.HYBRID,
    n_oscillators=9,
    hybrid_sampling=HybridSampling.ALIGNED,
)
engine = engine_init(config, weights, pattern_to_phases(probe, config.phase_bits))
outcome = run_until_settled(engine, max_periods=100, stability_window=3)
print(f"settled={outcome.settled} after {outcome.cycles_to_settle} periods")

rel = relative_phases(outcome.final_phases, config.phase_bits)
print(f"relative phases: {rel}")

# --- 4. Decode and judge -------------------------------------------------
retrieved = phases_to_pattern(outcome.final_phases, config.phase_bits, 3, 3)
render(retrieved, "retrieved")
print(f"correct recall (pattern or complement): {judge(retrieved, target)}")

# --- 5. The uncorrupted letter is a fixed point --------------------------
engine = engine_init(config, weights, pattern_to_phases(target, config.phase_bits))
outcome = run_until_settled(engine, max_periods=100, stability_window=3)
fixed = phases_to_pattern(outcome.final_phases, config.phase_bits, 3, 3)
print(f"\nuncorrupted probe: settled in {outcome.cycles_to_settle} periods, "
      f"decodes to itself: {judge(fixed, target)}")
