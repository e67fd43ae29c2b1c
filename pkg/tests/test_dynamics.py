#!/usr/bin/env python3
"""
Weak-MZI Dynamics Tests
Unit tests for vibration sets, validation and the time-series driver
"""

import pytest
import sys
from pathlib import Path

import numpy as np

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from weakmzi.dynamics import (
    DEFAULT_CYCLES,
    MirrorVibration,
    TimeSeriesConfig,
    VibrationSet,
    deflections_at,
    simulate_run,
    validate_vibration_set,
)
from weakmzi.detector import qcd_difference
from weakmzi.errors import InputRejected, RejectionReason
from weakmzi.interferometer import Blocking, MIRRORS, Scenario, compose_field
from weakmzi.profiles import line_integral_f2


class TestVibrationSet:
    """Tests for the harmonic drive."""

    def test_default_frequencies(self):
        """Test the default cycles and amplitudes."""
        vib = VibrationSet.default()
        assert vib.frequencies() == {m: float(DEFAULT_CYCLES[m]) for m in MIRRORS}
        assert set(vib.amplitudes().values()) == {1e-3}

    def test_default_scales_with_width_and_record(self):
        """Test that the defaults scale with width and record length."""
        vib = VibrationSet.default(width_y=2.0, record_length=0.5)
        assert vib.C.amplitude == pytest.approx(2e-3)
        assert vib.C.frequency == pytest.approx(46.0)

    def test_at_quarter_period(self):
        """Test the deflection at zero and at a quarter period."""
        v = MirrorVibration(amplitude=0.01, frequency=5.0)
        assert v.at(0.0) == 0.0
        assert v.at(0.05) == pytest.approx(0.01)

    def test_deflections_at_zero_time(self):
        """Test that all deflections vanish at t = 0."""
        assert deflections_at(VibrationSet.default(), 0.0).max_abs() == 0.0

    def test_only_silences_other_mirrors(self):
        """Test that only() keeps one mirror."""
        vib = VibrationSet.default().only("A")
        amplitudes = vib.amplitudes()
        assert amplitudes["A"] == 1e-3
        assert all(amplitudes[m] == 0.0 for m in MIRRORS if m != "A")

    def test_delayed_shifts_time(self):
        """Test that a delayed drive is the original drive shifted in time."""
        vib = VibrationSet.default()
        later = vib.delayed(0.013)
        for m in MIRRORS:
            assert later.mirror(m).at(0.2) == pytest.approx(vib.mirror(m).at(0.213), abs=1e-15)

    def test_scaled(self):
        """Test amplitude scaling."""
        assert VibrationSet.default().scaled(4.0).F.amplitude == pytest.approx(4e-3)


class TestTimeSeriesConfig:
    """Tests for the sampling configuration."""

    def test_derived_quantities(self):
        """Test the sample rate, Nyquist frequency and bin lookup."""
        ts = TimeSeriesConfig(n_samples=512, record_length=2.0)
        assert ts.sample_rate == 256.0
        assert ts.nyquist == 128.0
        assert ts.times[1] == pytest.approx(1.0 / 256.0)
        assert ts.bin_of(11.5) == 23

    def test_too_short_rejected(self):
        """Test that a record needs two samples."""
        with pytest.raises(InputRejected):
            TimeSeriesConfig(n_samples=1)


class TestValidateVibrationSet:
    """Tests for rejected vibration sets."""

    def test_default_set_is_valid(self, short_ts):
        """Test that the default drive is accepted."""
        validate_vibration_set(VibrationSet.default(), short_ts)

    def test_fractional_cycles_rejected(self, short_ts):
        """Test that a fractional cycle count is rejected."""
        vib = VibrationSet.default().with_mirror("E", MirrorVibration(1e-3, 29.5))
        with pytest.raises(InputRejected) as info:
            validate_vibration_set(vib, short_ts)
        assert info.value.reason is RejectionReason.VIBRATION_SET

    def test_above_nyquist_rejected(self):
        """Test that a frequency above Nyquist is rejected."""
        with pytest.raises(InputRejected) as info:
            validate_vibration_set(VibrationSet.default(), TimeSeriesConfig(n_samples=64))
        assert info.value.reason is RejectionReason.NYQUIST

    def test_negative_amplitude_rejected(self, short_ts):
        """Test that a negative amplitude is rejected."""
        vib = VibrationSet.default().with_mirror("A", MirrorVibration(-1e-3, 31.0))
        with pytest.raises(InputRejected):
            validate_vibration_set(vib, short_ts)

    def test_duplicate_frequency_rejected(self, short_ts):
        """Test that two mirrors cannot share a frequency."""
        vib = VibrationSet.default().with_mirror("B", MirrorVibration(1e-3, 23.0))
        with pytest.raises(InputRejected) as info:
            validate_vibration_set(vib, short_ts)
        assert "distinct" in info.value.message

    def test_mixing_product_rejected(self, short_ts):
        """Test that a frequency on a sum of two others is rejected."""
        vib = VibrationSet.default().with_mirror("F", MirrorVibration(1e-3, 52.0))
        with pytest.raises(InputRejected) as info:
            validate_vibration_set(vib, short_ts)
        assert "mixing product" in info.value.message

    def test_second_harmonic_rejected(self, short_ts):
        """Test that a frequency on a second harmonic is rejected."""
        vib = VibrationSet.default().with_mirror("F", MirrorVibration(1e-3, 46.0))
        with pytest.raises(InputRejected) as info:
            validate_vibration_set(vib, short_ts)
        assert "second harmonic" in info.value.message


class TestSimulateRun:
    """Tests for the quasi-static time series."""

    def test_series_shape(self, gaussian, small_grid, short_ts, default_vib):
        """Test the length and times of the series."""
        series = simulate_run(gaussian, small_grid, default_vib, Scenario.destructive(), short_ts)
        assert len(series) == 256
        np.testing.assert_array_equal(series.times, short_ts.times)
        assert series.sample(0).D == series.D[0]

    def test_silent_mirrors_give_zero_signal(self, gaussian, small_grid, short_ts, default_vib):
        """Test that zero amplitudes give a zero signal."""
        series = simulate_run(gaussian, small_grid, default_vib.with_amplitudes(0.0), Scenario.constructive(), short_ts)
        assert np.all(series.D == 0.0)

    def test_total_power_constant_with_inner_blocked(self, gaussian, small_grid, short_ts, default_vib):
        """Test that the C copy alone keeps a constant total power."""
        scenario = Scenario.destructive(Blocking.AFTER_MIRROR_F, source_intensity=9.0)
        series = simulate_run(gaussian, small_grid, default_vib, scenario, short_ts)
        np.testing.assert_allclose(series.total_power, 1.0, rtol=1e-12)

    def test_threaded_run_matches_serial(self, rectangular, small_grid, short_ts, default_vib):
        """Test that the threaded run reproduces the serial run bit for bit."""
        serial = simulate_run(rectangular, small_grid, default_vib, Scenario.constructive(), short_ts, workers=1)
        threaded = simulate_run(rectangular, small_grid, default_vib, Scenario.constructive(), short_ts, workers=3)
        np.testing.assert_array_equal(serial.D, threaded.D)
        np.testing.assert_array_equal(serial.upper_power, threaded.upper_power)

    def test_invalid_set_rejected_before_sampling(self, gaussian, small_grid, default_vib):
        """Test that the drive is validated before any sample is taken."""
        with pytest.raises(InputRejected):
            simulate_run(gaussian, small_grid, default_vib, Scenario.constructive(), TimeSeriesConfig(n_samples=64))

    def test_rectangular_c_only_series_is_exact(self, rectangular, small_grid, short_ts, default_vib):
        """Test that the C arm alone gives (2/9) I0 L a_C sin(2 pi f_C t) for a top-hat beam."""
        vib = default_vib.only("C")
        scenario = Scenario.destructive(Blocking.AFTER_MIRROR_F)
        series = simulate_run(rectangular, small_grid, vib, scenario, short_ts)
        expected = (2.0 / 9.0) * line_integral_f2(rectangular) * np.array([vib.C.at(t) for t in series.times])
        np.testing.assert_allclose(series.D, expected, rtol=0, atol=1e-14)

    def test_rectangular_blocked_c_arm_is_silent(self, rectangular, small_grid, short_ts, default_vib):
        """Test that destructive tuning with the C arm blocked leaves no signal for a top-hat beam."""
        series = simulate_run(rectangular, small_grid, default_vib, Scenario.destructive(Blocking.C_ARM), short_ts)
        assert np.max(np.abs(series.D)) <= 1e-10

    @pytest.mark.parametrize("k", [0, 17, 100, 255])
    def test_samples_are_quasi_static(self, gaussian, small_grid, short_ts, default_vib, k):
        """Test that each sample equals the detector reading for the instantaneous deflections."""
        scenario = Scenario.constructive()
        series = simulate_run(gaussian, small_grid, default_vib, scenario, short_ts)
        field = compose_field(gaussian, small_grid, deflections_at(default_vib, series.times[k]), scenario)
        assert series.D[k] == qcd_difference(field).D

    def test_delay_shifts_series(self, gaussian, small_grid, short_ts, default_vib):
        """Test that delaying the drive by m samples rotates the series by m samples."""
        m = 5
        scenario = Scenario.constructive()
        series = simulate_run(gaussian, small_grid, default_vib, scenario, short_ts)
        tau = m * short_ts.record_length / short_ts.n_samples
        delayed = simulate_run(gaussian, small_grid, default_vib.delayed(tau), scenario, short_ts)
        scale = np.max(np.abs(series.D))
        np.testing.assert_allclose(delayed.D, np.roll(series.D, -m), rtol=0, atol=1e-12 * scale)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
