"""Phase-controlled shift-register oscillator.

One oscillator is a circular shift register of 2^p bits loaded with a
half-ones / half-zeros word (ones first), plus a multiplexer that taps
one register bit as the oscillator's amplitude output.  Each slow clock
tick rotates the register left by one position, so the tapped bit walks
through one square-wave period every 2^p ticks.  The mux select line
offsets the tap and is how hardware programs the initial phase without
touching register contents.

Phase convention used everywhere in this package: phase index q in
[0, 2^p), amplitude = 1 iff q < 2^(p-1), and q advances by one per tick.
With t ticks elapsed, q = (mux_select + t) mod 2^p.  The elapsed-tick
count t is recoverable from the register word alone: if k is the index
holding the circular 0 -> 1 rising edge, then t = (2^p - k) mod 2^p.

A phase correction jumps the phase forward by delta ticks, implemented
as delta extra left rotations applied at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def osc_period_clocks(phase_bits: int) -> int:
    """Slow clock ticks per oscillation period: 2^p."""
    if phase_bits < 1:
        raise ValueError(f"p >= 1 required, got p={phase_bits}")
    return 1 << phase_bits


def phase_step_degrees(phase_bits: int) -> float:
    """Phase resolution: 360 deg / 2^p."""
    return 360.0 / osc_period_clocks(phase_bits)


def canonical_register_word(phase_bits: int) -> np.ndarray:
    """Power-on register contents: 2^(p-1) ones then 2^(p-1) zeros."""
    n = osc_period_clocks(phase_bits)
    word = np.zeros(n, dtype=np.uint8)
    word[: n // 2] = 1
    return word


@dataclass
class OscillatorState:
    registers: np.ndarray
    mux_select: int
    phase_bits: int


def osc_init(phase_bits: int, phase: int = 0) -> OscillatorState:
    """Fresh oscillator at the given initial phase.

    The initial phase is programmed through the mux select line, the
    same way the hardware does it; register contents are identical for
    every oscillator at power-on.
    """
    n = osc_period_clocks(phase_bits)
    if not 0 <= phase < n:
        raise ValueError(f"phase must lie in [0, {n}), got {phase}")
    return OscillatorState(
        registers=canonical_register_word(phase_bits),
        mux_select=phase,
        phase_bits=phase_bits,
    )


def osc_output(state: OscillatorState) -> int:
    """Amplitude bit currently on the mux output."""
    return int(state.registers[state.mux_select])


def osc_elapsed_ticks(state: OscillatorState) -> int:
    """Rotation count mod 2^p, recovered from the register word.

    k = index of the circular 0 -> 1 rising edge; t = (2^p - k) mod 2^p.
    """
    regs = state.registers
    n = regs.size
    prev = np.roll(regs, 1)
    edges = np.flatnonzero((regs == 1) & (prev == 0))
    if edges.size != 1:
        raise ValueError("register word is not a rotated half-ones word")
    k = int(edges[0])
    return (n - k) % n


def osc_phase(state: OscillatorState) -> int:
    """Current phase index in [0, 2^p)."""
    n = osc_period_clocks(state.phase_bits)
    return (state.mux_select + osc_elapsed_ticks(state)) % n


def osc_step(state: OscillatorState) -> None:
    """One slow clock tick: rotate the register word left by one."""
    state.registers = np.roll(state.registers, -1)


def osc_apply_correction(state: OscillatorState, delta: int) -> None:
    """Advance phase by delta ticks instantly (delta left rotations)."""
    n = osc_period_clocks(state.phase_bits)
    state.registers = np.roll(state.registers, -(delta % n))


def phase_to_amplitude(phase: int, phase_bits: int) -> int:
    """Amplitude implied by a phase index: 1 iff q < 2^(p-1)."""
    return 1 if (phase % (1 << phase_bits)) < (1 << (phase_bits - 1)) else 0
