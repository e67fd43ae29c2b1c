#!/usr/bin/env python3
"""
Weak-MZI Analytic Signal
Linearized quad-cell signal and its predicted spectral peaks

To first order in the deflections,

    D = (2/9) I0 {bracket} L,    L = integral of f(x, 0)^2 dx

    bracket = dC
            + [dA + dB + 2(dE + dF)] [1 + cos phiAB]
            + [dA + dC + dE + dF] cos phiAC
            + [dB + dC + dE + dF] cos phiBC

Blocking after mirror F leaves {dC}; blocking the C arm leaves the second
line only. The constant component that asymmetric profiles add is not
modelled here.

Peak powers follow the single-sided convention of weakmzi.spectrum: a
sinusoid of amplitude a has power a^2 / 2.
"""

import logging
from typing import Dict

import numpy as np

from weakmzi.dynamics import TimeSeriesConfig, VibrationSet
from weakmzi.interferometer import MIRRORS, Blocking, MirrorDeflections, Scenario

logger = logging.getLogger("WEAKMZI.Analytic")

PREFACTOR = 2.0 / 9.0


def curly_bracket(deflections: MirrorDeflections, scenario: Scenario) -> float:
    """
    Bracketed deflection combination the first-order signal is proportional to.

    Blocking after F leaves only delta_C; blocking the C arm keeps the inner
    loop term alone.
    """
    d = deflections
    p = scenario.phases

    if scenario.blocking is Blocking.AFTER_MIRROR_F:
        return d.delta_C

    inner = (d.delta_A + d.delta_B + 2.0 * (d.delta_E + d.delta_F)) * (1.0 + np.cos(p.phi_AB))
    if scenario.blocking is Blocking.C_ARM:
        return float(inner)

    return float(
        d.delta_C
        + inner
        + (d.delta_A + d.delta_C + d.delta_E + d.delta_F) * np.cos(p.phi_AC)
        + (d.delta_B + d.delta_C + d.delta_E + d.delta_F) * np.cos(p.phi_BC)
    )


def linearized_signal(deflections: MirrorDeflections, scenario: Scenario, line_int: float) -> float:
    """First-order detector signal for the scenario's blocking."""
    return PREFACTOR * scenario.source_intensity * curly_bracket(deflections, scenario) * line_int


def linear_coefficients(scenario: Scenario) -> Dict[str, float]:
    """Coefficient of each mirror's deflection inside the bracket."""
    return {
        m: curly_bracket(MirrorDeflections.from_mapping({m: 1.0}), scenario)
        for m in MIRRORS
    }


def predicted_peak_powers(vibration: VibrationSet, scenario: Scenario, line_int: float) -> Dict[str, float]:
    """Single-sided spectral power expected at each mirror's frequency."""
    coefficients = linear_coefficients(scenario)
    powers = {}
    for mirror in MIRRORS:
        amplitude = PREFACTOR * scenario.source_intensity * coefficients[mirror] \
            * vibration.mirror(mirror).amplitude * line_int
        powers[mirror] = 0.5 * amplitude ** 2
    return powers


def predicted_series(
    vibration: VibrationSet,
    scenario: Scenario,
    line_int: float,
    ts: TimeSeriesConfig
) -> np.ndarray:
    """Linearized signal sampled at the record's times."""
    coefficients = linear_coefficients(scenario)
    t = ts.times
    total = np.zeros_like(t)
    for mirror in MIRRORS:
        v = vibration.mirror(mirror)
        total += coefficients[mirror] * v.amplitude * np.sin(2.0 * np.pi * v.frequency * t + v.phase)
    return PREFACTOR * scenario.source_intensity * line_int * total
