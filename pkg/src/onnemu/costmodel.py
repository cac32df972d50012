"""Analytic hardware cost and frequency model.

Element counting is exact where the architecture fixes a closed form:
a recurrent network needs N-1 adders per oscillator (N(N-1) total),
a hybrid network one accumulator per oscillator.  Both store N^2
weights and have N^2 coupling elements.  The ORDER of the recurrent
adder count is N^2 even though the exact count is N(N-1); order_counts
returns the pure power-law series for scaling analysis, count_elements
the exact values.

Oscillation frequency: recurrent f_osc = f_logic / 2^p.  Hybrid divides
further by D = the smallest power of two >= N, which covers the N
serial MAC steps plus synchronization headroom; D reproduces the
published 50 MHz -> 6.1 kHz point at N=506 exactly.  The published
recurrent hardware reports 625 kHz where this model gives 2.5 MHz at
40 MHz logic, an unexplained factor of four; the optional
overhead_divisor exists to encode such implementation overheads and
defaults to 1 (pure model).

Area model: a CostCalibration maps element counts to the four FPGA
resource classes through user-suppliable linear coefficients; the
built-in calibrations anchor the per-oscillator (hybrid) or
per-coupling-element (recurrent) coefficients to a published Zynq-7020
synthesis at the architecture's maximum feasible size.  This model
reproduces theoretical scaling orders, not synthesized exponents,
which include tool-dependent overheads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from onnemu.core import Architecture


def next_pow2(n: int) -> int:
    if n < 1:
        raise ValueError(f"N >= 1 required, got N={n}")
    return 1 << (n - 1).bit_length()


@dataclass(frozen=True)
class ResourceCounts:
    oscillators: int
    coupling_elements: int
    memory_cells: int
    adders: int
    mac_units: int
    mux_inputs: int


def count_elements(
    arch: Architecture, n: int, weight_bits: int = 5, phase_bits: int = 4
) -> ResourceCounts:
    """Exact element counts for a network of N oscillators."""
    if n < 1 or weight_bits < 2 or phase_bits < 1:
        raise ValueError("need N >= 1, b >= 2, p >= 1")
    period = 1 << phase_bits
    if arch is Architecture.RECURRENT:
        adders = n * (n - 1)
        mac_units = 0
        mux_inputs = n * period
    else:
        adders = n
        mac_units = n
        mux_inputs = n * period + n * n
    return ResourceCounts(
        oscillators=n,
        coupling_elements=n * n,
        memory_cells=n * n,
        adders=adders,
        mac_units=mac_units,
        mux_inputs=mux_inputs,
    )


def order_counts(arch: Architecture, n: int) -> dict[str, int]:
    """Order-of-scaling series (pure power laws) per element class.

    The recurrent adder entry is N^2: the exact N(N-1) count is order
    N^2, and scaling statements refer to the order.
    """
    return {
        "coupling_elements": n * n,
        "memory_cells": n * n,
        "adders": n * n if arch is Architecture.RECURRENT else n,
        "mac_units": 0 if arch is Architecture.RECURRENT else n,
        "oscillators": n,
    }


def oscillation_frequency(
    arch: Architecture,
    n: int,
    phase_bits: int = 4,
    f_logic: float = 50e6,
    overhead_divisor: float = 1.0,
) -> float:
    """Oscillator output frequency in Hz for the given logic clock."""
    if n < 1 or phase_bits < 1 or f_logic <= 0 or overhead_divisor < 1:
        raise ValueError("need N >= 1, p >= 1, f_logic > 0, overhead_divisor >= 1")
    period = 1 << phase_bits
    if arch is Architecture.RECURRENT:
        return f_logic / (period * overhead_divisor)
    return f_logic / (period * next_pow2(n) * overhead_divisor)


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    r_squared: float


def fit_scaling(points) -> ScalingFit:
    """Ordinary least squares on (log10 N, log10 y)."""
    pts = [(float(n), float(y)) for n, y in points]
    if len(pts) < 2:
        raise ValueError("need at least 2 points")
    if any(n <= 0 or y <= 0 for n, y in pts):
        raise ValueError("log-log fit needs positive coordinates")
    x = np.log10([n for n, _ in pts])
    y = np.log10([v for _, v in pts])
    slope, intercept = np.polyfit(x, y, 1)
    pred = slope * x + intercept
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return ScalingFit(float(slope), float(intercept), r_squared)


@dataclass(frozen=True)
class DeviceProfile:
    """Capacities of the four FPGA resource classes."""

    luts: float = 53200.0
    flipflops: float = 106400.0
    dsp_slices: float = 220.0
    bram_blocks: float = 140.0

    def __post_init__(self):
        if min(self.luts, self.flipflops, self.dsp_slices, self.bram_blocks) <= 0:
            raise ValueError("device capacities must be positive")


ZYNQ_7020 = DeviceProfile()


@dataclass(frozen=True)
class ResourceMap:
    """Affine usage model for one resource class: usage = constant plus
    coefficient x element count over the listed element classes."""

    per_oscillator: float = 0.0
    per_coupling_element: float = 0.0
    per_adder: float = 0.0
    per_mac_unit: float = 0.0
    per_mux_input: float = 0.0
    constant: float = 0.0

    def usage(self, counts: ResourceCounts) -> float:
        return (
            self.constant
            + self.per_oscillator * counts.oscillators
            + self.per_coupling_element * counts.coupling_elements
            + self.per_adder * counts.adders
            + self.per_mac_unit * counts.mac_units
            + self.per_mux_input * counts.mux_inputs
        )


@dataclass(frozen=True)
class CostCalibration:
    luts: ResourceMap
    flipflops: ResourceMap
    dsp_slices: ResourceMap
    bram_blocks: ResourceMap


def hybrid_calibration() -> CostCalibration:
    """Per-oscillator coefficients anchored at the published hybrid
    maximum on the default device (N=506: 41547 LUT, 44748 FF, 220 DSP,
    140 BRAM)."""
    return CostCalibration(
        luts=ResourceMap(per_oscillator=41547 / 506),
        flipflops=ResourceMap(per_oscillator=44748 / 506),
        dsp_slices=ResourceMap(per_mac_unit=220 / 506),
        bram_blocks=ResourceMap(per_oscillator=140 / 506),
    )


def recurrent_calibration() -> CostCalibration:
    """Per-coupling-element coefficients anchored at the published
    recurrent maximum (N=48: 49441 LUT, 13906 FF, no DSP/BRAM)."""
    return CostCalibration(
        luts=ResourceMap(per_coupling_element=49441 / (48 * 48)),
        flipflops=ResourceMap(per_coupling_element=13906 / (48 * 48)),
        dsp_slices=ResourceMap(),
        bram_blocks=ResourceMap(),
    )


def default_calibration(arch: Architecture) -> CostCalibration:
    if arch is Architecture.RECURRENT:
        return recurrent_calibration()
    return hybrid_calibration()


@dataclass
class TradeoffPoint:
    n: int
    counts: ResourceCounts
    f_osc_hz: float
    lut_pct: float
    ff_pct: float
    dsp_pct: float
    bram_pct: float
    area_pct: float
    freq_pct: float
    over_capacity: bool


@dataclass
class TradeoffCurve:
    points: list[TradeoffPoint]
    crossover_n: float | None
    crossover_area_pct: float | None


def area_frequency_tradeoff(
    arch: Architecture,
    ns,
    profile: DeviceProfile = ZYNQ_7020,
    calibration: CostCalibration | None = None,
    weight_bits: int = 5,
    phase_bits: int = 4,
    f_logic: float = 50e6,
    overhead_divisor: float = 1.0,
) -> TradeoffCurve:
    """Area%% (mean of the four utilizations) and freq%% (of the range
    maximum) per N, plus their interpolated crossover."""
    ns = sorted(int(n) for n in ns)
    if not ns:
        raise ValueError("empty N range")
    if calibration is None:
        calibration = default_calibration(arch)
    freqs = [
        oscillation_frequency(arch, n, phase_bits, f_logic, overhead_divisor)
        for n in ns
    ]
    f_max = max(freqs)
    points = []
    for n, f in zip(ns, freqs):
        counts = count_elements(arch, n, weight_bits, phase_bits)
        lut = 100.0 * calibration.luts.usage(counts) / profile.luts
        ff = 100.0 * calibration.flipflops.usage(counts) / profile.flipflops
        dsp = 100.0 * calibration.dsp_slices.usage(counts) / profile.dsp_slices
        bram = 100.0 * calibration.bram_blocks.usage(counts) / profile.bram_blocks
        points.append(
            TradeoffPoint(
                n=n,
                counts=counts,
                f_osc_hz=f,
                lut_pct=lut,
                ff_pct=ff,
                dsp_pct=dsp,
                bram_pct=bram,
                area_pct=(lut + ff + dsp + bram) / 4.0,
                freq_pct=100.0 * f / f_max,
                over_capacity=max(lut, ff, dsp, bram) > 100.0,
            )
        )
    crossover_n = crossover_area = None
    for a, b in zip(points, points[1:]):
        ga, gb = a.area_pct - a.freq_pct, b.area_pct - b.freq_pct
        if ga == 0.0:
            crossover_n, crossover_area = float(a.n), a.area_pct
            break
        if ga * gb < 0.0:
            t = ga / (ga - gb)
            crossover_n = a.n + t * (b.n - a.n)
            crossover_area = a.area_pct + t * (b.area_pct - a.area_pct)
            break
        if gb == 0.0:
            crossover_n, crossover_area = float(b.n), b.area_pct
            break
    return TradeoffCurve(points, crossover_n, crossover_area)


def curve_to_csv(curve: TradeoffCurve) -> str:
    lines = [
        "n,oscillators,coupling_elements,memory_cells,adders,mac_units,"
        "mux_inputs,f_osc_hz,lut_pct,ff_pct,dsp_pct,bram_pct,area_pct,"
        "freq_pct,over_capacity"
    ]
    for p in curve.points:
        c = p.counts
        lines.append(
            f"{p.n},{c.oscillators},{c.coupling_elements},{c.memory_cells},"
            f"{c.adders},{c.mac_units},{c.mux_inputs},{p.f_osc_hz!r},"
            f"{p.lut_pct!r},{p.ff_pct!r},{p.dsp_pct!r},{p.bram_pct!r},"
            f"{p.area_pct!r},{p.freq_pct!r},{int(p.over_capacity)}"
        )
    if curve.crossover_n is not None:
        lines.append(
            f"# crossover_n={curve.crossover_n!r} "
            f"crossover_area_pct={curve.crossover_area_pct!r}"
        )
    return "\n".join(lines) + "\n"
