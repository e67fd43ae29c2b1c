#!/usr/bin/env python3
"""
Weak-MZI Spectrum
Single-sided power spectrum of the detector series and per-mirror peaks

Normalization, shared with weakmzi.analytic:
    P_0     = |X_0|^2 / N^2
    P_k     = 2 |X_k|^2 / N^2     for 0 < k < N/2
    P_{N/2} = |X_{N/2}|^2 / N^2   (N even)
so a sinusoid of amplitude a on an exact bin has power a^2 / 2 and the
bin powers sum to the mean square of the series. No window is applied:
mirror frequencies make whole cycles per record.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Union

import numpy as np

from weakmzi.dynamics import TimeSeries, TimeSeriesConfig, check_frequency
from weakmzi.errors import InputRejected, RejectionReason

logger = logging.getLogger("WEAKMZI.Spectrum")

DETECTABILITY_FACTOR = 10.0

# Floor on the noise estimate, as a fraction of the mean detected power
ROUNDING_FLOOR = 1e-13


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    """Bin powers, mirror peaks and the noise floor of one record."""
    bin_powers: np.ndarray
    frequencies: np.ndarray
    peak_bins: Dict[str, int]
    peak_power: Dict[str, float]
    noise_floor: float
    record_length: float = 1.0
    n_samples: int = field(default=0)

    @property
    def dc_power(self) -> float:
        return float(self.bin_powers[0])

    def mirror_at(self, k: int) -> Optional[str]:
        """Mirror whose peak lies on bin k, if any."""
        for mirror, b in self.peak_bins.items():
            if b == k:
                return mirror
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "peak_power": dict(self.peak_power),
            "peak_bins": dict(self.peak_bins),
            "noise_floor": self.noise_floor,
            "dc_power": self.dc_power,
            "n_samples": self.n_samples,
            "record_length": self.record_length
        }


def _single_sided(values: np.ndarray) -> np.ndarray:
    n = values.size
    powers = np.abs(np.fft.rfft(values)) ** 2 / float(n) ** 2
    if n % 2 == 0:
        powers[1:-1] *= 2.0
    else:
        powers[1:] *= 2.0
    return powers


def power_spectrum(
    series: Union[TimeSeries, np.ndarray],
    ts: Optional[TimeSeriesConfig] = None,
    mirror_frequencies: Optional[Mapping[str, float]] = None
) -> SpectrumReport:
    """
    Spectrum of a detector series.

    A TimeSeries carries its own configuration and mirror frequencies; a
    bare array needs `ts` (defaults to its own length over unit time) and
    optionally the frequencies to report peaks for.
    Every frequency must make a whole number of cycles below Nyquist.
    """
    if isinstance(series, TimeSeries):
        values = series.D
        config = ts or series.config
        frequencies = mirror_frequencies or series.vibrations.frequencies()
        scale = float(np.mean(series.total_power))
    else:
        values = np.asarray(series, dtype=float)
        config = ts or TimeSeriesConfig(n_samples=max(values.size, 2))
        frequencies = mirror_frequencies or {}
        scale = float(np.max(np.abs(values))) if values.size else 0.0

    if values.size != config.n_samples:
        raise InputRejected(
            RejectionReason.LENGTH_MISMATCH,
            f"series has {values.size} samples, configuration expects {config.n_samples}"
        )

    powers = _single_sided(values)
    peak_bins = {m: check_frequency(m, f, config) for m, f in frequencies.items()}
    peak_power = {m: float(powers[k]) for m, k in peak_bins.items()}

    mask = np.ones(powers.size, dtype=bool)
    mask[0] = False
    for k in peak_bins.values():
        mask[k] = False
    median = float(np.median(powers[mask])) if mask.any() else 0.0
    noise_floor = max(median, (ROUNDING_FLOOR * scale) ** 2)

    return SpectrumReport(
        bin_powers=powers,
        frequencies=np.fft.rfftfreq(values.size, d=config.record_length / values.size),
        peak_bins=peak_bins,
        peak_power=peak_power,
        noise_floor=noise_floor,
        record_length=config.record_length,
        n_samples=values.size
    )


def is_detectable(report: SpectrumReport, mirror: str) -> bool:
    """True when the mirror's peak stands above the noise floor by the detectability factor."""
    return report.peak_power[mirror] > DETECTABILITY_FACTOR * report.noise_floor


def peak_ratio(report: SpectrumReport, num: str, den: str) -> float:
    """Ratio of two peak powers; the reference peak must be detectable."""
    if not is_detectable(report, den):
        raise InputRejected(
            RejectionReason.NO_REFERENCE_PEAK,
            f"peak of mirror {den} ({report.peak_power[den]:.3g}) is not above the noise floor"
        )
    return report.peak_power[num] / report.peak_power[den]


def peak_amplitude(report: SpectrumReport, mirror: str) -> float:
    """Amplitude of the sinusoid that would produce the peak."""
    return float(np.sqrt(2.0 * report.peak_power[mirror]))


def ac_power(series: Union[TimeSeries, np.ndarray]) -> float:
    """Mean square of the series about its mean."""
    values = series.D if isinstance(series, TimeSeries) else np.asarray(series, dtype=float)
    return float(np.mean((values - np.mean(values)) ** 2))
