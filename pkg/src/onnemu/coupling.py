"""Coupling arithmetic: adder tree, serial MAC, reference, correction.

Both architectures compute the same per-oscillator quantity, the signed
weighted sum over all source amplitudes where amplitude 1 contributes
+w and amplitude 0 contributes -w.  The recurrent design computes it
with a parallel sign-select adder tree per oscillator; the hybrid
design time-multiplexes a single accumulator over N fast-clock cycles.

The sign of the sum drives a per-oscillator reference square wave, and
on each rising edge of that reference the oscillator's phase register
is jumped forward so its own rising edge aligns with the reference
(snap to phase 0).  The correction is all-at-once, not incremental;
that single-addition alignment is this emulator's defining semantic
for the phase-difference counter.

Serial MAC accumulation order is ascending source index j = 0..N-1.
Triggering a MAC that is still accumulating raises TimingViolation:
it means the fast clock is fewer than N times faster than the slow
clock, a configuration the hardware cannot realize.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from onnemu.core import weight_limit


class TimingViolation(RuntimeError):
    """Serial MAC re-triggered before finishing its N accumulation steps."""


class MacProtocolError(RuntimeError):
    """Serial MAC stepped while idle (no trigger pending)."""


def coupling_sum_width(n: int, weight_bits: int) -> int:
    """Accumulator width in bits: b + ceil(log2(N)) + 1.

    Holds the worst case |sum| = N * (2^(b-1) - 1) with a sign bit to
    spare, so no intermediate value can ever overflow.
    """
    if n < 1:
        raise ValueError(f"N >= 1 required, got N={n}")
    return weight_bits + math.ceil(math.log2(n)) + 1


@dataclass(frozen=True)
class CouplingSum:
    """Signed accumulator value plus the register width that holds it."""

    value: int
    width: int

    def __post_init__(self):
        lo = -(1 << (self.width - 1))
        hi = (1 << (self.width - 1)) - 1
        if not lo <= self.value <= hi:
            raise ValueError(
                f"sum {self.value} not representable in {self.width} signed bits"
            )


def weighted_sum(row, amplitudes, weight_bits: int = 5) -> CouplingSum:
    """Parallel adder tree: sum of +w/-w selected by each amplitude bit."""
    row = np.asarray(row, dtype=np.int64)
    amps = np.asarray(amplitudes, dtype=np.int64)
    if row.shape != amps.shape or row.ndim != 1:
        raise ValueError(
            f"row and amplitudes must be equal-length vectors, "
            f"got {row.shape} and {amps.shape}"
        )
    spins = np.where(amps == 1, 1, -1)
    value = int(row @ spins)
    return CouplingSum(value, coupling_sum_width(row.size, weight_bits))


def weighted_sums_all(entries: np.ndarray, amplitudes: np.ndarray) -> np.ndarray:
    """All N sums at once: entries @ spins.  Engine fast path."""
    spins = np.where(amplitudes == 1, 1, -1).astype(np.int64)
    return entries @ spins


def reference_bit(coupling_sum, own_amplitude: int) -> int:
    """Sign of the sum; a sum of exactly zero echoes the own amplitude."""
    value = coupling_sum.value if isinstance(coupling_sum, CouplingSum) else coupling_sum
    if value > 0:
        return 1
    if value < 0:
        return 0
    return int(own_amplitude)


def reference_bits_all(sums: np.ndarray, amplitudes: np.ndarray) -> np.ndarray:
    """Vectorized reference_bit over every oscillator."""
    return np.where(sums > 0, 1, np.where(sums < 0, 0, amplitudes)).astype(np.uint8)


def phase_correction_on_ref_edge(
    prev_ref: int, cur_ref: int, phase: int, phase_bits: int
) -> int:
    """Phase delta applied this tick: 0 unless the reference just rose.

    On a (0, 1) reference transition the oscillator snaps to phase 0,
    i.e. delta = (2^p - phase) mod 2^p.
    """
    if not (prev_ref == 0 and cur_ref == 1):
        return 0
    n = 1 << phase_bits
    return (n - phase % n) % n


def phase_corrections_all(
    prev_refs: np.ndarray, cur_refs: np.ndarray, phases: np.ndarray, phase_bits: int
) -> np.ndarray:
    """Vectorized phase_correction_on_ref_edge over every oscillator."""
    n = 1 << phase_bits
    rising = (prev_refs == 0) & (cur_refs == 1)
    return np.where(rising, (n - phases % n) % n, 0).astype(np.int64)


@dataclass
class SerialMacState:
    """One hybrid accumulator: counter, running sum, latched result.

    n_inputs fixes the step count per activation; width bounds every
    intermediate value (checked on each step, never violated by
    construction of the width rule).
    """

    n_inputs: int
    weight_bits: int = 5
    counter: int = 0
    accumulator: int = 0
    latched_sum: int = 0
    busy: bool = False
    width: int = field(init=False)

    def __post_init__(self):
        self.width = coupling_sum_width(self.n_inputs, self.weight_bits)


def serial_mac_trigger(state: SerialMacState) -> SerialMacState:
    """Slow-clock edge: reset the accumulator and start a new pass.

    latched_sum keeps the previous result until the new pass completes.
    """
    if state.busy:
        raise TimingViolation(
            f"MAC re-triggered at counter={state.counter}/{state.n_inputs}; "
            f"fast clock must be at least {state.n_inputs}x the slow clock"
        )
    state.accumulator = 0
    state.counter = 0
    state.busy = True
    return state


def serial_mac_step(state: SerialMacState, weight: int, amplitude: int) -> SerialMacState:
    """One fast-clock accumulation: add +weight or -weight per amplitude."""
    if not state.busy:
        raise MacProtocolError("MAC stepped while idle")
    limit = weight_limit(state.weight_bits)
    if abs(weight) > limit:
        raise ValueError(f"weight {weight} outside [-{limit}, {limit}]")
    state.accumulator += weight if amplitude == 1 else -weight
    state.counter += 1
    lo, hi = -(1 << (state.width - 1)), (1 << (state.width - 1)) - 1
    if not lo <= state.accumulator <= hi:
        raise OverflowError(
            f"accumulator {state.accumulator} exceeded {state.width}-bit range"
        )
    if state.counter == state.n_inputs:
        state.latched_sum = state.accumulator
        state.busy = False
    return state


def serial_mac_run(state: SerialMacState, row, amplitudes) -> int:
    """Trigger plus the full N-step pass; returns the latched sum."""
    row = np.asarray(row, dtype=np.int64)
    amps = np.asarray(amplitudes, dtype=np.int64)
    if row.size != state.n_inputs or amps.size != state.n_inputs:
        raise ValueError(
            f"expected {state.n_inputs} inputs, got {row.size} weights "
            f"and {amps.size} amplitudes"
        )
    serial_mac_trigger(state)
    for j in range(state.n_inputs):
        serial_mac_step(state, int(row[j]), int(amps[j]))
    return state.latched_sum
