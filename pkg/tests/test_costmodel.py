"""Tests for the analytic hardware cost and frequency model."""

import math

import pytest
from hypothesis import given, strategies as st

from onnemu.core import Architecture
from onnemu.costmodel import (
    ZYNQ_7020,
    CostCalibration,
    DeviceProfile,
    ResourceMap,
    area_frequency_tradeoff,
    count_elements,
    curve_to_csv,
    default_calibration,
    fit_scaling,
    hybrid_calibration,
    next_pow2,
    order_counts,
    oscillation_frequency,
    recurrent_calibration,
)

REC = Architecture.RECURRENT
HYB = Architecture.HYBRID


# ---------------------------------------------------------------- counting


def test_next_pow2():
    assert next_pow2(1) == 1
    assert next_pow2(2) == 2
    assert next_pow2(3) == 4
    assert next_pow2(506) == 512
    assert next_pow2(512) == 512
    with pytest.raises(ValueError):
        next_pow2(0)


def test_count_anchor_recurrent_48():
    c = count_elements(REC, 48)
    assert c.adders == 2256  # 48 * 47
    assert c.coupling_elements == 2304
    assert c.memory_cells == 2304
    assert c.mac_units == 0
    assert c.mux_inputs == 48 * 16


def test_count_anchor_hybrid_506():
    c = count_elements(HYB, 506)
    assert c.coupling_elements == 256036  # 506^2
    assert c.memory_cells == 256036
    assert c.adders == 506
    assert c.mac_units == 506
    assert c.mux_inputs == 506 * 16 + 256036


def test_count_boundary_n1():
    rec = count_elements(REC, 1)
    assert rec.adders == 0 and rec.coupling_elements == 1
    hyb = count_elements(HYB, 1)
    assert hyb.adders == 1 and hyb.mac_units == 1


def test_count_validates_arguments():
    with pytest.raises(ValueError):
        count_elements(REC, 0)
    with pytest.raises(ValueError):
        count_elements(REC, 4, weight_bits=1)


@given(st.integers(min_value=1, max_value=2048), st.integers(min_value=1, max_value=6))
def test_mux_inputs_scale_with_period(n, p):
    period = 1 << p
    assert count_elements(REC, n, phase_bits=p).mux_inputs == n * period
    assert count_elements(HYB, n, phase_bits=p).mux_inputs == n * period + n * n


def test_order_counts_are_pure_power_laws():
    for n in (8, 64, 512):
        rec = order_counts(REC, n)
        assert rec["adders"] == n * n
        assert rec["coupling_elements"] == n * n
        assert rec["mac_units"] == 0
        hyb = order_counts(HYB, n)
        assert hyb["adders"] == n
        assert hyb["mac_units"] == n
        assert hyb["memory_cells"] == n * n


# ---------------------------------------------------------------- frequency


def test_frequency_reference_points():
    # Hybrid flagship: 50 MHz / (16 * 512) = 6103.5 Hz, i.e. about 6.1 kHz.
    f = oscillation_frequency(HYB, 506)
    assert f == pytest.approx(50e6 / (16 * 512))
    assert abs(f - 6.10e3) / 6.10e3 < 0.01
    # Recurrent at 40 MHz logic and p=4: one oscillation per 16 clocks.
    assert oscillation_frequency(REC, 48, f_logic=40e6) == pytest.approx(2.5e6)
    # The overhead divisor scales the output down linearly.
    assert oscillation_frequency(REC, 48, f_logic=40e6, overhead_divisor=4.0) == (
        pytest.approx(625e3)
    )


def test_recurrent_frequency_is_independent_of_n():
    fs = {oscillation_frequency(REC, n) for n in (1, 48, 500, 2048)}
    assert len(fs) == 1


@given(st.integers(min_value=1, max_value=4095))
def test_hybrid_frequency_is_non_increasing_in_n(n):
    assert oscillation_frequency(HYB, n) >= oscillation_frequency(HYB, n + 1)


def test_hybrid_frequency_steps_at_powers_of_two():
    assert oscillation_frequency(HYB, 64) == oscillation_frequency(HYB, 33)
    assert oscillation_frequency(HYB, 65) == oscillation_frequency(HYB, 64) / 2


def test_frequency_validates_arguments():
    with pytest.raises(ValueError):
        oscillation_frequency(REC, 0)
    with pytest.raises(ValueError):
        oscillation_frequency(REC, 4, f_logic=0.0)
    with pytest.raises(ValueError):
        oscillation_frequency(REC, 4, overhead_divisor=0.5)


# ---------------------------------------------------------------- fitting


NS = [8, 16, 32, 64, 128, 256, 512]


def test_fit_recovers_exact_power_laws():
    quad = fit_scaling([(n, n * n) for n in NS])
    assert quad.slope == pytest.approx(2.0, abs=1e-12)
    assert abs(quad.r_squared - 1.0) <= 1e-9

    lin = fit_scaling([(n, 7 * n) for n in NS])
    assert lin.slope == pytest.approx(1.0, abs=1e-12)
    assert lin.intercept == pytest.approx(math.log10(7.0), abs=1e-12)
    assert abs(lin.r_squared - 1.0) <= 1e-9


def test_order_series_slopes_meet_spec_bounds():
    rec_adders = fit_scaling([(n, order_counts(REC, n)["adders"]) for n in NS])
    assert abs(rec_adders.slope - 2.0) <= 1e-3
    hyb_adders = fit_scaling([(n, count_elements(HYB, n).adders) for n in NS])
    assert abs(hyb_adders.slope - 1.0) <= 1e-3
    memory = fit_scaling([(n, count_elements(HYB, n).memory_cells) for n in NS])
    assert abs(memory.slope - 2.0) <= 1e-3


def test_exact_recurrent_adder_count_is_not_a_pure_power_law():
    # N(N-1) over this range fits with slope visibly above 2; the order
    # statement refers to order_counts, not the exact series.
    exact = fit_scaling([(n, count_elements(REC, n).adders) for n in NS])
    assert exact.slope > 2.01


@given(st.floats(min_value=0.01, max_value=1000.0))
def test_fit_slope_is_invariant_under_vertical_scaling(c):
    base = fit_scaling([(n, n * n) for n in NS])
    scaled = fit_scaling([(n, c * n * n) for n in NS])
    assert scaled.slope == pytest.approx(base.slope, abs=1e-9)
    assert abs(scaled.r_squared - 1.0) <= 1e-9


def test_fit_validates_input():
    with pytest.raises(ValueError):
        fit_scaling([(8, 64)])
    with pytest.raises(ValueError):
        fit_scaling([(8, 64), (16, 0)])


# ---------------------------------------------------------------- calibration


def test_device_profile_defaults():
    assert (ZYNQ_7020.luts, ZYNQ_7020.flipflops) == (53200, 106400)
    assert (ZYNQ_7020.dsp_slices, ZYNQ_7020.bram_blocks) == (220, 140)


def test_hybrid_calibration_reproduces_published_utilization():
    counts = count_elements(HYB, 506)
    cal = hybrid_calibration()
    assert 100 * cal.luts.usage(counts) / ZYNQ_7020.luts == pytest.approx(78.10, abs=0.05)
    assert 100 * cal.flipflops.usage(counts) / ZYNQ_7020.flipflops == pytest.approx(
        42.06, abs=0.05
    )
    assert 100 * cal.dsp_slices.usage(counts) / ZYNQ_7020.dsp_slices == pytest.approx(
        100.0, abs=0.05
    )
    assert 100 * cal.bram_blocks.usage(counts) / ZYNQ_7020.bram_blocks == pytest.approx(
        100.0, abs=0.05
    )


def test_recurrent_calibration_reproduces_published_utilization():
    counts = count_elements(REC, 48)
    cal = recurrent_calibration()
    assert 100 * cal.luts.usage(counts) / ZYNQ_7020.luts == pytest.approx(92.9, abs=0.05)
    assert 100 * cal.flipflops.usage(counts) / ZYNQ_7020.flipflops == pytest.approx(
        13.1, abs=0.08
    )
    assert cal.dsp_slices.usage(counts) == 0.0


def test_default_calibration_dispatch():
    assert default_calibration(REC) == recurrent_calibration()
    assert default_calibration(HYB) == hybrid_calibration()


# ---------------------------------------------------------------- tradeoff


def test_constant_area_calibration_crosses_where_frequency_falls_to_it():
    # Degenerate calibration: every resource is a flat 12% of a
    # 100-unit device, independent of N.  The crossover then sits where
    # the normalized frequency curve passes 12%.
    profile = DeviceProfile(luts=100, flipflops=100, dsp_slices=100, bram_blocks=100)
    flat = ResourceMap(constant=12.0)
    cal = CostCalibration(luts=flat, flipflops=flat, dsp_slices=flat, bram_blocks=flat)
    curve = area_frequency_tradeoff(HYB, range(8, 513), profile=profile, calibration=cal)
    assert all(p.area_pct == pytest.approx(12.0) for p in curve.points)
    assert curve.crossover_area_pct == pytest.approx(12.0, abs=1e-9)
    below = [p.n for p in curve.points if p.freq_pct < 12.0]
    above = [p.n for p in curve.points if p.freq_pct > 12.0]
    assert max(above) <= curve.crossover_n <= min(below)


def test_paper_calibrated_hybrid_crossover_lands_near_published_vicinity():
    curve = area_frequency_tradeoff(HYB, range(8, 513))
    assert curve.crossover_n is not None
    assert 50 <= curve.crossover_n <= 90
    assert 6 <= curve.crossover_area_pct <= 25


def test_area_increases_and_frequency_decreases_for_hybrid():
    curve = area_frequency_tradeoff(HYB, [8, 16, 32, 64, 128, 256, 512])
    areas = [p.area_pct for p in curve.points]
    freqs = [p.freq_pct for p in curve.points]
    assert areas == sorted(areas)
    assert freqs == sorted(freqs, reverse=True)
    assert curve.points[0].freq_pct == pytest.approx(100.0)


def test_over_capacity_flagged_beyond_device_limits():
    curve = area_frequency_tradeoff(HYB, [506, 512])
    at_506 = curve.points[0]
    at_512 = curve.points[1]
    assert not at_506.over_capacity  # published maximum just fits
    assert at_512.over_capacity
    assert at_512.dsp_pct > 100.0


def test_no_crossover_on_a_single_point():
    curve = area_frequency_tradeoff(HYB, [64])
    assert curve.crossover_n is None
    assert curve.crossover_area_pct is None


def test_tradeoff_rejects_empty_range():
    with pytest.raises(ValueError):
        area_frequency_tradeoff(HYB, [])


def test_curve_csv_layout():
    curve = area_frequency_tradeoff(HYB, [8, 16, 32, 64, 128])
    text = curve_to_csv(curve)
    lines = text.splitlines()
    data = [l for l in lines if l and not l.startswith("#")]
    assert data[0].startswith("n,oscillators,coupling_elements")
    assert len(data) == 1 + 5
    if curve.crossover_n is not None:
        assert any(l.startswith("# crossover_n=") for l in lines)
    # Round-trippable floats via repr.
    first = data[1].split(",")
    assert int(first[0]) == 8
