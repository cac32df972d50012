"""Diederich-Opper I learning and quantization to engine precision.

The rule: sweep patterns in dataset order, units in ascending index.
For pattern xi and unit i compute the local field h_i = sum_j W_ij
xi_j; whenever the stability margin xi_i * h_i falls below the
threshold, reinforce the whole row: W_ij += (1/N) * xi_i * xi_j for
every j, the diagonal included.  Training converges when a full epoch
triggers no update, at which point every training pattern holds margin
>= threshold at every unit.

Row updates within one pattern are mutually independent (row i only
enters h_i), so the unit loop is evaluated as one vectorized masked
rank-1 update; the result is identical to the sequential sweep.

Quantization rescales the converged matrix so the largest magnitude
lands exactly on the top of the representable range, then rounds ties
away from zero and clamps.  A stability report records the scale and
re-checks each training pattern against the quantized matrix using the
engine's tie rule (a zero field keeps the current state).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from onnemu.core import BinaryPattern, SpinVector, WeightMatrix, weight_limit


@dataclass(frozen=True)
class TrainingParams:
    stability_threshold: float = 1.0
    max_epochs: int = 1000

    def __post_init__(self):
        if self.stability_threshold <= 0:
            raise ValueError("stability_threshold must be positive")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be >= 1")


@dataclass
class TrainingResult:
    weights: np.ndarray
    converged: bool
    epochs: int


def _as_spin_vector(p):
    if isinstance(p, BinaryPattern):
        p = SpinVector.from_pattern(p)
    return getattr(p, "spins", p)


def _as_spin_rows(patterns) -> np.ndarray:
    rows = [np.asarray(_as_spin_vector(p), dtype=np.int64).ravel() for p in patterns]
    if not rows:
        raise ValueError("at least one training pattern required")
    n = rows[0].size
    for r in rows:
        if r.size != n:
            raise ValueError("training patterns must share one length")
        if not np.isin(r, (-1, 1)).all():
            raise ValueError("training patterns must be +1/-1 spins")
    return np.stack(rows)


def train_do1(patterns, params: TrainingParams = TrainingParams()) -> TrainingResult:
    """Iterate the rule to convergence; weights returned either way."""
    xis = _as_spin_rows(patterns)
    n = xis.shape[1]
    w = np.zeros((n, n), dtype=np.float64)
    inc = 1.0 / n
    for epoch in range(1, params.max_epochs + 1):
        updated = False
        for xi in xis:
            h = w @ xi
            mask = (xi * h) < params.stability_threshold
            if mask.any():
                w[mask] += inc * np.outer(xi[mask], xi)
                updated = True
        if not updated:
            return TrainingResult(weights=w, converged=True, epochs=epoch)
    return TrainingResult(weights=w, converged=False, epochs=params.max_epochs)


def pattern_is_stable(entries: np.ndarray, spins: np.ndarray) -> bool:
    """Sign fixed point under engine semantics: every unit's field agrees
    with its spin, a zero field counting as agreement (tie keeps state)."""
    h = entries @ spins
    return bool(np.all((h * spins) >= 0))


@dataclass
class StabilityReport:
    scale: float
    weight_bits: int
    unstable_patterns: list[int] = field(default_factory=list)
    n_patterns: int = 0
    warning: str | None = None

    @property
    def all_stable(self) -> bool:
        return not self.unstable_patterns


def quantize_matrix(
    w: np.ndarray, weight_bits: int = 5, patterns=None
) -> tuple[WeightMatrix, StabilityReport]:
    """Scale to full range, round half away from zero, clamp; re-check
    the given patterns (if any) against the quantized matrix."""
    w = np.asarray(w, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError(f"weight matrix must be square, got shape {w.shape}")
    limit = weight_limit(weight_bits)
    peak = float(np.abs(w).max()) if w.size else 0.0
    warning = None
    if peak == 0.0:
        scale = 1.0
        warning = "all-zero matrix: identity scaling applied"
    else:
        scale = limit / peak
    scaled = w * scale
    q = np.copysign(np.floor(np.abs(scaled) + 0.5), scaled)
    q = np.clip(q, -limit, limit).astype(np.int64)
    quantized = WeightMatrix(q, weight_bits)
    report = StabilityReport(scale=scale, weight_bits=weight_bits, warning=warning)
    if patterns is not None:
        rows = _as_spin_rows(patterns)
        report.n_patterns = rows.shape[0]
        for idx, xi in enumerate(rows):
            if not pattern_is_stable(quantized.entries, xi):
                report.unstable_patterns.append(idx)
    return quantized, report


def format_stability_report(report: StabilityReport) -> str:
    lines = [
        f"scale = {report.scale!r}",
        f"quantized range = [-{weight_limit(report.weight_bits)}, "
        f"{weight_limit(report.weight_bits)}]",
    ]
    if report.warning:
        lines.append(f"warning: {report.warning}")
    for idx in range(report.n_patterns):
        state = "UNSTABLE" if idx in report.unstable_patterns else "stable"
        lines.append(f"pattern {idx}: {state}")
    if report.n_patterns == 0:
        lines.append("no patterns checked")
    return "\n".join(lines) + "\n"
