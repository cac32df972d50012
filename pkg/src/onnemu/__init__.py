"""onnemu: cycle-accurate emulator of digital oscillatory neural networks.

Module map:
    core       shared domain types, fixed-point weight rules, text formats
    rng        pinned deterministic random number generator (SplitMix64)
    oscillator phase-controlled shift-register oscillator
    coupling   parallel adder tree, serial MAC, phase correction rule
    engine     slow-clock network emulation, settling detection, traces
    training   DO-1 learning rule and weight quantization
    datasets   built-in letter bitmaps at the benchmark grid sizes
    tasks      pattern corruption, encoding, retrieval judging, benchmark
    costmodel  hardware element counts, frequency model, scaling fits
    cli        command-line entry points
    service    HTTP/JSON emulation service
"""

from onnemu.core import (
    Architecture,
    BinaryPattern,
    HybridSampling,
    NetworkConfig,
    PhaseIndex,
    SpinVector,
    WeightMatrix,
    quantize_weight,
    validate_config,
    weight_limit,
)
from onnemu.costmodel import (
    CostCalibration,
    DeviceProfile,
    ResourceCounts,
    ResourceMap,
    ScalingFit,
    TradeoffCurve,
    area_frequency_tradeoff,
    count_elements,
    curve_to_csv,
    default_calibration,
    fit_scaling,
    hybrid_calibration,
    order_counts,
    oscillation_frequency,
    recurrent_calibration,
)
from onnemu.coupling import (
    MacProtocolError,
    TimingViolation,
    coupling_sum_width,
    serial_mac_run,
    weighted_sum,
)
from onnemu.datasets import builtin_dataset, builtin_names, load_dataset
from onnemu.engine import (
    EngineState,
    RunOutcome,
    energy,
    engine_init,
    format_trace,
    relative_phases,
    run_until_settled,
    step_slow_clock,
)
from onnemu.oscillator import (
    OscillatorState,
    osc_init,
    osc_output,
    osc_period_clocks,
    osc_phase,
    osc_step,
    phase_step_degrees,
)
from onnemu.rng import SplitMix64, derive_seed
from onnemu.tasks import (
    CorruptionSpec,
    RetrievalReport,
    corrupt,
    flip_count,
    judge,
    pattern_to_phases,
    phases_to_pattern,
    report_to_csv,
    report_to_text,
    run_benchmark,
)
from onnemu.training import (
    StabilityReport,
    TrainingParams,
    TrainingResult,
    format_stability_report,
    quantize_matrix,
    train_do1,
)

__version__ = "0.1.0"

__all__ = [
    "Architecture",
    "BinaryPattern",
    "CorruptionSpec",
    "CostCalibration",
    "DeviceProfile",
    "EngineState",
    "HybridSampling",
    "MacProtocolError",
    "NetworkConfig",
    "OscillatorState",
    "PhaseIndex",
    "ResourceCounts",
    "ResourceMap",
    "RetrievalReport",
    "RunOutcome",
    "ScalingFit",
    "SpinVector",
    "SplitMix64",
    "StabilityReport",
    "TimingViolation",
    "TradeoffCurve",
    "TrainingParams",
    "TrainingResult",
    "WeightMatrix",
    "area_frequency_tradeoff",
    "builtin_dataset",
    "builtin_names",
    "corrupt",
    "count_elements",
    "coupling_sum_width",
    "curve_to_csv",
    "default_calibration",
    "derive_seed",
    "energy",
    "engine_init",
    "fit_scaling",
    "flip_count",
    "format_stability_report",
    "format_trace",
    "hybrid_calibration",
    "judge",
    "load_dataset",
    "order_counts",
    "osc_init",
    "osc_output",
    "osc_period_clocks",
    "osc_phase",
    "osc_step",
    "oscillation_frequency",
    "pattern_to_phases",
    "phase_step_degrees",
    "phases_to_pattern",
    "quantize_matrix",
    "quantize_weight",
    "recurrent_calibration",
    "relative_phases",
    "report_to_csv",
    "report_to_text",
    "run_benchmark",
    "run_until_settled",
    "serial_mac_run",
    "step_slow_clock",
    "train_do1",
    "validate_config",
    "weight_limit",
    "weighted_sum",
    "__version__",
]
