"""Shared domain types, fixed-point weight rules, and text serialization.

The emulated hardware stores coupling weights as signed two's-complement
integers of ``weight_bits`` bits, but the most negative value is banned:
the adder tree feeds either +w or -w into the sum depending on the
source oscillator's amplitude, so every weight's negation must be
representable.  At the default 5 bits the legal range is [-15, 15].

Rounding during quantization is round-to-nearest with ties away from
zero.  The choice is arbitrary but pinned: the trainer, the stability
reports, and the tests all rely on it.

Weight matrix orientation: entries[i][j] is the weight of the
connection from oscillator j into oscillator i (row = destination).
Asymmetric matrices and self-coupling on the diagonal are both legal.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class Architecture(enum.Enum):
    RECURRENT = "recurrent"
    HYBRID = "hybrid"


class HybridSampling(enum.Enum):
    """Amplitude sampling discipline of the serialized coupling path.

    PIPELINED: the serial sum consumed at a slow-clock edge was computed
    from amplitudes latched at the previous edge (one-edge latency, the
    faithful hardware timing).  ALIGNED: the sum is computed from the
    current edge's amplitudes, which makes the hybrid network's dynamics
    bit-identical to the recurrent one.  Ignored for RECURRENT.
    """

    PIPELINED = "pipelined"
    ALIGNED = "aligned"


def weight_limit(bits: int) -> int:
    """Largest representable magnitude: 2^(b-1) - 1."""
    return (1 << (bits - 1)) - 1


@dataclass(frozen=True)
class NetworkConfig:
    architecture: Architecture
    n_oscillators: int
    weight_bits: int = 5
    phase_bits: int = 4
    hybrid_sampling: HybridSampling = HybridSampling.PIPELINED
    logic_frequency_hz: float = 50e6

    @property
    def period_clocks(self) -> int:
        """Slow clocks per oscillation period: 2^phase_bits."""
        return 1 << self.phase_bits

    @property
    def phase_step_degrees(self) -> float:
        return 360.0 / (1 << self.phase_bits)

    @property
    def natural_frequency_hz(self) -> float:
        """logic_frequency_hz / 2^p; informational, never used by dynamics."""
        return self.logic_frequency_hz / (1 << self.phase_bits)


def validate_config(config: NetworkConfig) -> NetworkConfig:
    """Check all NetworkConfig invariants; returns the config unchanged.

    Raises ValueError with the violated bound in the message.
    """
    if config.n_oscillators < 1:
        raise ValueError(f"N >= 1 required, got N={config.n_oscillators}")
    if config.weight_bits < 2:
        raise ValueError(
            f"b >= 2 required (sign + magnitude bit), got b={config.weight_bits}"
        )
    if config.phase_bits < 1:
        raise ValueError(f"p >= 1 required, got p={config.phase_bits}")
    if not (config.logic_frequency_hz > 0):
        raise ValueError(
            f"logic_frequency_hz > 0 required, got {config.logic_frequency_hz}"
        )
    if not isinstance(config.architecture, Architecture):
        raise ValueError(f"unknown architecture {config.architecture!r}")
    if not isinstance(config.hybrid_sampling, HybridSampling):
        raise ValueError(f"unknown hybrid_sampling {config.hybrid_sampling!r}")
    return config


def quantize_weight(w: float, bits: int = 5) -> int:
    """Quantize a real weight: round to nearest (ties away from zero),
    then clamp to the symmetric range [-(2^(b-1)-1), 2^(b-1)-1].

    Total function: never raises for finite w.
    """
    if bits < 2:
        raise ValueError(f"b >= 2 required, got b={bits}")
    q = int(math.floor(abs(w) + 0.5))
    if w < 0:
        q = -q
    limit = weight_limit(bits)
    return max(-limit, min(limit, q))


def check_fixed_weight(value: int, bits: int) -> int:
    """Validate that an integer lies in the symmetric fixed-point range."""
    limit = weight_limit(bits)
    if not -limit <= value <= limit:
        raise ValueError(
            f"weight {value} outside [-{limit}, {limit}] for b={bits}"
        )
    return value


@dataclass(frozen=True)
class WeightMatrix:
    """N x N signed integer coupling weights; entries[i][j] = j -> i."""

    entries: np.ndarray
    weight_bits: int = 5

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"weight matrix must be square, got shape {arr.shape}")
        limit = weight_limit(self.weight_bits)
        if arr.size and np.abs(arr).max() > limit:
            raise ValueError(
                f"weight magnitude {np.abs(arr).max()} exceeds {limit} "
                f"for b={self.weight_bits}"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def zeros(cls, n: int, weight_bits: int = 5) -> "WeightMatrix":
        return cls(np.zeros((n, n), dtype=np.int64), weight_bits)


@dataclass(frozen=True)
class PhaseIndex:
    """Discrete phase in units of 360 deg / 2^p; always reduced mod 2^p."""

    index: int
    phase_bits: int

    def __post_init__(self):
        if self.phase_bits < 1:
            raise ValueError(f"p >= 1 required, got p={self.phase_bits}")
        object.__setattr__(self, "index", self.index % (1 << self.phase_bits))

    @property
    def degrees(self) -> float:
        return self.index * 360.0 / (1 << self.phase_bits)


@dataclass(frozen=True)
class BinaryPattern:
    """width x height bitmap, row-major pixels, 1 = black, 0 = white."""

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("pattern dimensions must be positive")
        arr = np.asarray(self.pixels, dtype=np.uint8).ravel()
        if arr.size != self.width * self.height:
            raise ValueError(
                f"expected {self.width * self.height} pixels, got {arr.size}"
            )
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("pixels must be 0 or 1")
        arr.flags.writeable = False
        object.__setattr__(self, "pixels", arr)

    @property
    def n_pixels(self) -> int:
        return self.width * self.height

    def rows(self) -> np.ndarray:
        return self.pixels.reshape(self.height, self.width)

    def complement(self) -> "BinaryPattern":
        return BinaryPattern(self.width, self.height, 1 - self.pixels)

    @classmethod
    def from_rows(cls, rows) -> "BinaryPattern":
        arr = np.asarray(rows, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("rows must form a 2-D grid")
        return cls(arr.shape[1], arr.shape[0], arr.ravel())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryPattern):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and bool(np.array_equal(self.pixels, other.pixels))
        )

    def __hash__(self):
        return hash((self.width, self.height, self.pixels.tobytes()))


@dataclass(frozen=True)
class SpinVector:
    """Ising spins, +1/-1.  Amplitude 1 / black pixel -> +1."""

    spins: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.spins, dtype=np.int8).ravel()
        if arr.size and not np.isin(arr, (-1, 1)).all():
            raise ValueError("spins must be +1 or -1")
        arr.flags.writeable = False
        object.__setattr__(self, "spins", arr)

    @property
    def n(self) -> int:
        return self.spins.size

    @classmethod
    def from_pattern(cls, pattern: BinaryPattern) -> "SpinVector":
        return cls(np.where(pattern.pixels == 1, 1, -1).astype(np.int8))

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "SpinVector":
        amps = np.asarray(amplitudes)
        return cls(np.where(amps == 1, 1, -1).astype(np.int8))


# ---------------------------------------------------------------------------
# Text formats.
#
# Pattern file: one row per line of '0'/'1' characters, uniform length;
# lines starting with '#' are comments.  A multi-pattern file separates
# patterns with one or more blank lines.
#
# Weight file: CSV of signed decimal integers, N rows x N columns.
#
# Config file: 'key = value' lines, '#' comments.  Keys: architecture,
# n_oscillators, weight_bits, phase_bits, hybrid_sampling,
# logic_frequency_hz.
# ---------------------------------------------------------------------------


def format_pattern(pattern: BinaryPattern) -> str:
    rows = pattern.rows()
    return "\n".join("".join(str(int(v)) for v in row) for row in rows) + "\n"


def parse_pattern(text: str) -> BinaryPattern:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if set(line) - {"0", "1"}:
            raise ValueError(f"pattern line contains non-binary characters: {line!r}")
        rows.append([int(c) for c in line])
    if not rows:
        raise ValueError("pattern file contains no rows")
    width = len(rows[0])
    for r in rows:
        if len(r) != width:
            raise ValueError("pattern rows have inconsistent lengths")
    return BinaryPattern.from_rows(rows)


def parse_patterns(text: str) -> list[BinaryPattern]:
    """Parse a multi-pattern file (patterns separated by blank lines)."""
    blocks: list[list[str]] = [[]]
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if blocks[-1]:
                blocks.append([])
            continue
        blocks[-1].append(line)
    return [parse_pattern("\n".join(b)) for b in blocks if b]


def format_patterns(patterns: list[BinaryPattern]) -> str:
    return "\n".join(format_pattern(p) for p in patterns)


def format_weights_csv(weights: WeightMatrix) -> str:
    return "\n".join(",".join(str(int(v)) for v in row) for row in weights.entries) + "\n"


def parse_weights_csv(text: str, weight_bits: int = 5) -> WeightMatrix:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([int(tok) for tok in line.split(",")])
    if not rows:
        raise ValueError("weight file contains no rows")
    return WeightMatrix(np.array(rows, dtype=np.int64), weight_bits)


_CONFIG_KEYS = (
    "architecture",
    "n_oscillators",
    "weight_bits",
    "phase_bits",
    "hybrid_sampling",
    "logic_frequency_hz",
)


def format_config(config: NetworkConfig) -> str:
    lines = [
        f"architecture = {config.architecture.value}",
        f"n_oscillators = {config.n_oscillators}",
        f"weight_bits = {config.weight_bits}",
        f"phase_bits = {config.phase_bits}",
        f"hybrid_sampling = {config.hybrid_sampling.value}",
        f"logic_frequency_hz = {config.logic_frequency_hz!r}",
    ]
    return "\n".join(lines) + "\n"


def parse_config(text: str) -> NetworkConfig:
    values: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line is not 'key = value': {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"unknown config key {key!r}")
        values[key] = val.strip()
    if "n_oscillators" not in values:
        raise ValueError("config missing required key 'n_oscillators'")
    config = NetworkConfig(
        architecture=Architecture(values.get("architecture", "recurrent")),
        n_oscillators=int(values["n_oscillators"]),
        weight_bits=int(values.get("weight_bits", 5)),
        phase_bits=int(values.get("phase_bits", 4)),
        hybrid_sampling=HybridSampling(values.get("hybrid_sampling", "pipelined")),
        logic_frequency_hz=float(values.get("logic_frequency_hz", 50e6)),
    )
    return validate_config(config)
