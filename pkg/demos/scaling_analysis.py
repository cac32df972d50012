"""Hardware cost scaling: where the serialized design overtakes.

Counts coupling hardware for both architectures across network sizes,
fits log-log slopes to confirm the quadratic-vs-linear split, models the
oscillation frequency cost of serialization, and locates the crossover
where the hybrid design's area advantage outweighs its frequency loss.
"""

import numpy as np

from onnemu import (
    Architecture,
    area_frequency_tradeoff,
    count_elements,
    default_calibration,
    fit_scaling,
    order_counts,
    oscillation_frequency,
)
from onnemu.costmodel import ZYNQ_7020

SIZES = [8, 16, 32, 64, 128, 256, 512]

# --- 1. Element counts ----------------------------------------------------
print(f"{'N':>5} {'rec adders':>11} {'hyb adders':>11} {'memory':>9} {'rec mux':>9} {'hyb mux':>9}")
for n in SIZES:
    rec = count_elements(Architecture.RECURRENT, n)
    hyb = count_elements(Architecture.HYBRID, n)
    print(f"{n:>5} {rec.adders:>11} {hyb.adders:>11} {rec.memory_cells:>9} "
          f"{rec.mux_inputs:>9} {hyb.mux_inputs:>9}")

# --- 2. Log-log slopes ------------------------------------------------------
for arch in Architecture:
    for element in ("adders", "memory_cells"):
        pts = [(n, order_counts(arch, n)[element]) for n in SIZES]
        fit = fit_scaling(pts)
        print(f"{arch.value:>9} {element:<13} slope {fit.slope:.3f}  R^2 {fit.r_squared:.6f}")

# The exact recurrent adder count N(N-1) fits slightly above 2 at these
# sizes; the order series above is the pure N^2 law.
exact = fit_scaling([(n, count_elements(Architecture.RECURRENT, n).adders) for n in SIZES])
print(f"exact recurrent adder count N(N-1): slope {exact.slope:.3f} (order is 2)")

# --- 3. Oscillation frequency ------------------------------------------------
# Recurrent: phase updates happen every slow clock regardless of N.
# Hybrid: the slow clock must wait for the serial MAC, so frequency
# divides by the next power of two >= N.
print(f"\n{'N':>5} {'recurrent f_osc':>16} {'hybrid f_osc':>14}")
for n in [48, 64, 128, 506]:
    fr = oscillation_frequency(Architecture.RECURRENT, n, phase_bits=4, f_logic=40e6)
    fh = oscillation_frequency(Architecture.HYBRID, n, phase_bits=4, f_logic=50e6)
    print(f"{n:>5} {fr:>14.1f} Hz {fh:>11.2f} Hz")

# --- 4. Area/frequency trade-off ----------------------------------------------
# Percent of device area used vs percent of peak oscillation frequency,
# on the default device profile, hybrid architecture.
curve = area_frequency_tradeoff(
    Architecture.HYBRID,
    range(8, 257, 8),
    calibration=default_calibration(Architecture.HYBRID),
    profile=ZYNQ_7020,
    phase_bits=4,
    f_logic=50e6,
)
print(f"\n{'N':>5} {'area %':>8} {'freq %':>8}")
for pt in curve.points[:: max(1, len(curve.points) // 8)]:
    print(f"{pt.n:>5} {pt.area_pct:>8.2f} {pt.freq_pct:>8.2f}")
print(f"crossover: N ~ {curve.crossover_n:.0f}, "
      f"area ~ {curve.crossover_area_pct:.1f}% of the device")
