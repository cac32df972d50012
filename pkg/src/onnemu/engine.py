"""Slow-clock network emulation: stepping, settling detection, traces.

The engine stores each oscillator as its phase index and materializes
register-level OscillatorState views on demand; phase arithmetic and
register rotation are interchangeable (a rotation by one is a phase
increment by one), and the equivalence is pinned by tests against a
reference engine that manipulates explicit register words.

Tick order inside step_slow_clock is fixed and is part of the
emulator's defining semantics:

    1. coupling sums   recurrent and hybrid/aligned: from this tick's
                       amplitudes; hybrid/pipelined: from amplitudes
                       latched at the previous slow edge, then re-latch
                       this tick's (pre-correction) amplitudes
    2. reference bits  sign of each sum, tie echoes own live amplitude
    3. corrections     snap-to-phase-0 on each reference rising edge
    4. shift           every oscillator advances one phase step
    5. bookkeeping     prev_reference takes this tick's reference bits

prev_reference starts equal to the initial amplitudes so that t=0
produces no spurious reference edge.

In hybrid mode the N serial MAC steps between two slow edges are
evaluated atomically (one matrix-vector product); mac_debug=True
instead drives explicit SerialMacState units step by step and keeps
their per-fast-tick accumulator traces for inspection.  Observable
semantics are identical, which the tests assert.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from onnemu.core import Architecture, HybridSampling, NetworkConfig, WeightMatrix, validate_config
from onnemu.coupling import (
    SerialMacState,
    TimingViolation,
    phase_corrections_all,
    reference_bits_all,
    serial_mac_step,
    serial_mac_trigger,
    weighted_sums_all,
)
from onnemu.oscillator import OscillatorState, canonical_register_word


@dataclass
class EngineState:
    config: NetworkConfig
    weights: WeightMatrix
    phases: np.ndarray
    prev_reference: np.ndarray
    sampled_amplitudes: np.ndarray | None
    slow_clock: int = 0
    trace: list | None = None
    mac_debug: bool = False
    mac_trace_last: list | None = None

    @property
    def n(self) -> int:
        return self.phases.size

    def amplitudes(self) -> np.ndarray:
        """Current output bit of every oscillator: 1 iff phase < 2^(p-1)."""
        half = 1 << (self.config.phase_bits - 1)
        return (self.phases < half).astype(np.uint8)

    def oscillators(self) -> list[OscillatorState]:
        """Register-level views of every oscillator (mux at 0, rotation = phase)."""
        word = canonical_register_word(self.config.phase_bits)
        return [
            OscillatorState(
                registers=np.roll(word, -int(q)),
                mux_select=0,
                phase_bits=self.config.phase_bits,
            )
            for q in self.phases
        ]


def engine_init(
    config: NetworkConfig,
    weights: WeightMatrix,
    initial_phases,
    record_trace: bool = False,
    mac_debug: bool = False,
    fast_slow_ratio: int | None = None,
    clock_offset: int = 0,
) -> EngineState:
    """Build an engine ready for its first slow tick.

    fast_slow_ratio optionally declares how many fast clocks fit in one
    slow clock; a hybrid network needs at least N of them or the serial
    MAC would be re-triggered mid-pass (TimingViolation).

    clock_offset free-runs every oscillator that many ticks before
    coupling begins, emulating an unsynchronized computation-enable
    signal; relative phases are unchanged by it, absolute ones are not.
    """
    validate_config(config)
    n = config.n_oscillators
    if weights.n != n:
        raise ValueError(f"weight matrix is {weights.n}x{weights.n}, config has N={n}")
    period = config.period_clocks
    phases = np.asarray(initial_phases, dtype=np.int64).ravel()
    if phases.size != n:
        raise ValueError(f"expected {n} initial phases, got {phases.size}")
    if phases.size and (phases.min() < 0 or phases.max() >= period):
        raise ValueError(f"initial phases must lie in [0, {period})")
    if (
        config.architecture is Architecture.HYBRID
        and fast_slow_ratio is not None
        and fast_slow_ratio < n
    ):
        raise TimingViolation(
            f"fast/slow ratio {fast_slow_ratio} < N={n}: serial MAC cannot "
            f"finish between slow edges"
        )
    phases = (phases + clock_offset) % period
    engine = EngineState(
        config=config,
        weights=weights,
        phases=phases,
        prev_reference=np.empty(0, dtype=np.uint8),
        sampled_amplitudes=None,
        slow_clock=0,
        trace=[] if record_trace else None,
        mac_debug=mac_debug,
    )
    amps = engine.amplitudes()
    engine.prev_reference = amps.copy()
    if config.architecture is Architecture.HYBRID:
        engine.sampled_amplitudes = amps.copy()
    return engine


def _mac_debug_sums(engine: EngineState, amplitudes: np.ndarray) -> np.ndarray:
    """Hybrid sums via explicit serial MAC units, keeping accumulator traces."""
    n = engine.n
    entries = engine.weights.entries
    sums = np.zeros(n, dtype=np.int64)
    traces = []
    for i in range(n):
        mac = SerialMacState(n_inputs=n, weight_bits=engine.config.weight_bits)
        serial_mac_trigger(mac)
        trace = []
        for j in range(n):
            serial_mac_step(mac, int(entries[i, j]), int(amplitudes[j]))
            trace.append(mac.accumulator)
        sums[i] = mac.latched_sum
        traces.append(trace)
    engine.mac_trace_last = traces
    return sums


def step_slow_clock(engine: EngineState) -> EngineState:
    """Advance the network one slow-clock tick (order pinned above)."""
    config = engine.config
    amps = engine.amplitudes()

    if (
        config.architecture is Architecture.HYBRID
        and config.hybrid_sampling is HybridSampling.PIPELINED
    ):
        source_amps = engine.sampled_amplitudes
        engine.sampled_amplitudes = amps.copy()
    else:
        source_amps = amps

    if engine.mac_debug and config.architecture is Architecture.HYBRID:
        sums = _mac_debug_sums(engine, source_amps)
    else:
        sums = weighted_sums_all(engine.weights.entries, source_amps)

    refs = reference_bits_all(sums, amps)
    deltas = phase_corrections_all(
        engine.prev_reference, refs, engine.phases, config.phase_bits
    )
    engine.phases = (engine.phases + deltas + 1) % config.period_clocks
    engine.prev_reference = refs
    engine.slow_clock += 1
    return engine


def relative_phases(phases: np.ndarray, phase_bits: int) -> np.ndarray:
    """Phases re-zeroed on oscillator 0, mod 2^p."""
    period = 1 << phase_bits
    return (phases - phases[0]) % period


@dataclass
class RunOutcome:
    final_phases: np.ndarray
    settled: bool
    cycles_to_settle: int
    timed_out: bool

    def __post_init__(self):
        if self.settled == self.timed_out:
            raise ValueError("outcome must be settled xor timed_out")


def run_until_settled(
    engine: EngineState,
    max_periods: int = 1000,
    stability_window: int = 3,
) -> RunOutcome:
    """Run whole oscillation periods until the relative phases hold still.

    The relative-phase vector is sampled once per period, starting at
    t=0.  Settled means stability_window consecutive identical samples;
    cycles_to_settle is the index of the first sample of that window.
    Gives up after simulating max_periods periods (timed_out, with
    cycles_to_settle = max_periods).
    """
    if not max_periods >= stability_window >= 1:
        raise ValueError(
            f"need max_periods >= stability_window >= 1, "
            f"got {max_periods}, {stability_window}"
        )
    period = engine.config.period_clocks
    recent: list[bytes] = []
    for sample_idx in range(max_periods + 1):
        rel = relative_phases(engine.phases, engine.config.phase_bits)
        if engine.trace is not None:
            engine.trace.append(engine.phases.copy())
        recent.append(rel.tobytes())
        if len(recent) > stability_window:
            recent.pop(0)
        if len(recent) == stability_window and len(set(recent)) == 1:
            return RunOutcome(
                final_phases=engine.phases.copy(),
                settled=True,
                cycles_to_settle=sample_idx - stability_window + 1,
                timed_out=False,
            )
        if sample_idx == max_periods:
            break
        for _ in range(period):
            step_slow_clock(engine)
    return RunOutcome(
        final_phases=engine.phases.copy(),
        settled=False,
        cycles_to_settle=max_periods,
        timed_out=True,
    )


def energy(weights: WeightMatrix, spins) -> float:
    """Ising energy -1/2 sum_ij W_ij s_i s_j; diagnostic only."""
    s = np.asarray(getattr(spins, "spins", spins), dtype=np.int64).ravel()
    if s.size != weights.n:
        raise ValueError(f"expected {weights.n} spins, got {s.size}")
    return -0.5 * float(s @ weights.entries @ s)


def format_trace(engine: EngineState) -> str:
    """Trace dump: config-echo header, then one comma-separated phase
    vector per period sample."""
    if engine.trace is None:
        raise ValueError("engine was not created with record_trace=True")
    c = engine.config
    header = (
        f"# architecture={c.architecture.value} n_oscillators={c.n_oscillators} "
        f"weight_bits={c.weight_bits} phase_bits={c.phase_bits} "
        f"hybrid_sampling={c.hybrid_sampling.value} "
        f"logic_frequency_hz={c.logic_frequency_hz!r}"
    )
    lines = [header]
    lines.extend(",".join(str(int(q)) for q in frame) for frame in engine.trace)
    return "\n".join(lines) + "\n"
