#!/usr/bin/env python3
"""
Weak-MZI Detector Tests
Unit tests for the quad-cell difference and the parity split
"""

import pytest
import sys
from pathlib import Path

import numpy as np
from scipy import special

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from weakmzi.detector import effective_line_integral, parity_split, qcd_difference
from weakmzi.errors import InputRejected, RejectionReason
from weakmzi.interferometer import Blocking, MirrorDeflections, Scenario, compose_field
from weakmzi.profiles import BeamProfile, Grid, line_integral_f2

AFTER_F = Scenario.constructive(blocking=Blocking.AFTER_MIRROR_F)


def _d_for_c_shift(profile, grid, delta, scenario=AFTER_F):
    return qcd_difference(compose_field(profile, grid, MirrorDeflections(delta_C=delta), scenario))


class TestQcdDifference:
    """Tests for the up/down difference signal."""

    def test_even_intensity_gives_exact_zero(self, gaussian, rectangular, grid):
        """Test that an intensity even in y gives exactly zero."""
        for profile in (gaussian, rectangular):
            sample = qcd_difference(compose_field(profile, grid, MirrorDeflections(), Scenario.constructive()))
            assert sample.D == 0.0
            assert sample.upper_power == sample.lower_power

    def test_total_power_is_source_intensity(self, gaussian, grid):
        """Test that an unshifted constructive field carries the source power."""
        field_map = compose_field(gaussian, grid, MirrorDeflections(), Scenario.constructive(source_intensity=3.0))
        assert qcd_difference(field_map).total_power == pytest.approx(3.0, rel=1e-12)

    def test_upward_shift_is_positive(self, gaussian, grid):
        """Test that shifting the beam up gives a positive signal."""
        assert _d_for_c_shift(gaussian, grid, 0.01).D > 0
        assert _d_for_c_shift(gaussian, grid, -0.01).D < 0

    def test_antisymmetric_in_shift(self, gaussian, grid):
        """Test that reversing the shift reverses the signal."""
        plus = _d_for_c_shift(gaussian, grid, 0.02).D
        minus = _d_for_c_shift(gaussian, grid, -0.02).D
        assert plus == pytest.approx(-minus, rel=1e-12)

    def test_rectangular_shift_is_exact(self, rectangular, grid):
        """Test the exact top-hat signal 2 delta / 9."""
        # Top-hat of unit depth: each half gains or loses the shift itself
        sample = _d_for_c_shift(rectangular, grid, 0.013)
        assert sample.D == pytest.approx(2.0 * 0.013 / 9.0, rel=1e-12)
        assert sample.upper_power == pytest.approx((0.5 + 0.013) / 9.0, rel=1e-12)

    def test_gaussian_shift_matches_error_function(self, gaussian, grid):
        """Test a shifted Gaussian against its error-function closed form."""
        delta = 0.01
        exact = special.erf(np.sqrt(2.0) * delta / gaussian.width_y) / 9.0
        assert _d_for_c_shift(gaussian, grid, delta).D == pytest.approx(exact, rel=1e-3)

    def test_grid_error_converges_quadratically(self, gaussian):
        """Test that halving the grid step quarters the error."""
        delta = 0.01
        exact = special.erf(np.sqrt(2.0) * delta) / 9.0
        errors = [
            abs(_d_for_c_shift(gaussian, Grid(nx=32, ny=ny), delta).D - exact)
            for ny in (50, 100, 200)
        ]
        for coarse, fine in zip(errors, errors[1:]):
            assert 3.5 <= coarse / fine <= 4.5

    def test_to_dict(self, gaussian, grid):
        """Test the dictionary form of a sample."""
        data = _d_for_c_shift(gaussian, grid, 0.01).to_dict()
        assert set(data) == {"D", "upper_power", "lower_power"}


class TestParitySplit:
    """Tests for the even/odd decomposition of the intensity."""

    def test_unshifted_gaussian_has_no_odd_part(self, gaussian, grid):
        """Test that a centred Gaussian has no odd intensity."""
        field_map = compose_field(gaussian, grid, MirrorDeflections(), Scenario.constructive())
        even, odd = parity_split(field_map)
        assert odd == 0.0
        assert even == pytest.approx(1.0, rel=1e-12)

    def test_shift_creates_odd_part(self, gaussian, grid):
        """Test that a shift creates an odd intensity part."""
        field_map = compose_field(gaussian, grid, MirrorDeflections(delta_C=0.01), AFTER_F)
        _, odd = parity_split(field_map)
        assert odd > 0.0

    def test_asymmetric_profile_has_odd_part_unshifted(self, asymmetric, grid):
        """Test that the skewed profile is odd even without a shift."""
        field_map = compose_field(asymmetric, grid, MirrorDeflections(), Scenario.constructive())
        _, odd = parity_split(field_map)
        assert odd > 1e-3

    def test_refined_asymmetric_grid_rejected(self, rectangular, grid):
        """Test that the split refuses a refined grid that is not symmetric in y."""
        field_map = compose_field(rectangular, grid, MirrorDeflections(delta_C=0.013), AFTER_F)
        with pytest.raises(InputRejected) as info:
            parity_split(field_map)
        assert info.value.reason is RejectionReason.GRID_SHAPE


class TestEffectiveLineIntegral:
    """Tests for the grid's first-order response."""

    def test_rectangular_matches_line_integral(self, rectangular, grid):
        """Test that the top-hat response equals its line integral."""
        assert effective_line_integral(rectangular, grid) == pytest.approx(line_integral_f2(rectangular), rel=1e-6)

    def test_gaussian_close_to_line_integral(self, gaussian, grid):
        """Test that the Gaussian response is close to its line integral."""
        assert effective_line_integral(gaussian, grid) == pytest.approx(line_integral_f2(gaussian), rel=1e-3)

    def test_wide_rectangle(self):
        """Test the response of a wide shallow top-hat."""
        profile = BeamProfile.rectangular(2.0, 0.5)
        assert effective_line_integral(profile, Grid.for_profile(profile)) == pytest.approx(2.0, rel=1e-6)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
