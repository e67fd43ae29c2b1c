"""
Weak-MZI Test Configuration
Pytest fixtures and configuration
"""

import pytest
import sys
from pathlib import Path

# Add project root
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from weakmzi.dynamics import TimeSeriesConfig, VibrationSet
from weakmzi.profiles import BeamProfile, Grid


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-length runs and the acceptance matrix")


@pytest.fixture(scope="session")
def gaussian():
    """Unit-width Gaussian beam."""
    return BeamProfile.gaussian()


@pytest.fixture(scope="session")
def rectangular():
    """Unit square top-hat beam."""
    return BeamProfile.rectangular()


@pytest.fixture(scope="session")
def asymmetric():
    """Skewed test beam."""
    return BeamProfile.asymmetric_test(skew=0.3)


@pytest.fixture(scope="session")
def grid():
    """Default production grid."""
    return Grid()


@pytest.fixture(scope="session")
def small_grid():
    """Coarser grid for fast time-series tests."""
    return Grid(nx=32, ny=200, extent_x=5.0, extent_y=5.0)


@pytest.fixture(scope="session")
def short_ts():
    """Short record; default frequencies stay below Nyquist."""
    return TimeSeriesConfig(n_samples=256)


@pytest.fixture(scope="session")
def default_vib():
    return VibrationSet.default()
