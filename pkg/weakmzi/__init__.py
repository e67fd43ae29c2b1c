"""
Weak-MZI
Nested Mach-Zehnder interferometer weak-measurement simulator
"""

from .profiles import BeamProfile, Grid, ProfileKind, evaluate, line_integral_f2
from .interferometer import (
    Blocking,
    FieldMap,
    MirrorDeflections,
    PhaseConfig,
    Scenario,
    Tuning,
    compose_field,
    CutPlane,
    FieldCut,
    transverse_cut,
)
from .detector import DetectorSample, qcd_difference
from .analytic import curly_bracket, linearized_signal, predicted_peak_powers
from .dynamics import TimeSeries, TimeSeriesConfig, VibrationSet, deflections_at, simulate_run
from .spectrum import SpectrumReport, peak_ratio, power_spectrum
from .errors import InputRejected, RejectionReason

__all__ = [
    "BeamProfile",
    "Grid",
    "ProfileKind",
    "evaluate",
    "line_integral_f2",
    "Blocking",
    "FieldMap",
    "MirrorDeflections",
    "PhaseConfig",
    "Scenario",
    "Tuning",
    "compose_field",
    "CutPlane",
    "FieldCut",
    "transverse_cut",
    "DetectorSample",
    "qcd_difference",
    "curly_bracket",
    "linearized_signal",
    "predicted_peak_powers",
    "TimeSeries",
    "TimeSeriesConfig",
    "VibrationSet",
    "deflections_at",
    "simulate_run",
    "SpectrumReport",
    "peak_ratio",
    "power_spectrum",
    "InputRejected",
    "RejectionReason",
]

__version__ = "1.0.0"
