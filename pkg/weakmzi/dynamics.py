#!/usr/bin/env python3
"""
Weak-MZI Dynamics
Harmonic mirror vibrations and the detector time series

Each mirror vibrates as a_i sin(2 pi f_i t + theta_i). Samples are
quasi-static: every time step composes the field for the instantaneous
deflections and reads the detector, with no state carried between steps.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import permutations
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from weakmzi.detector import DetectorSample, qcd_difference
from weakmzi.errors import InputRejected, RejectionReason
from weakmzi.interferometer import MIRRORS, MirrorDeflections, Scenario, compose_field
from weakmzi.profiles import BeamProfile, Grid

logger = logging.getLogger("WEAKMZI.Dynamics")

# Cycles per record; distinct odd primes, so sums and differences are even
DEFAULT_CYCLES: Dict[str, int] = {"C": 23, "E": 29, "A": 31, "B": 37, "F": 41}

DEFAULT_RELATIVE_AMPLITUDE = 1e-3

# Tolerance for "integer number of cycles" and frequency coincidences
CYCLE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class MirrorVibration:
    """Harmonic deflection of one mirror."""
    amplitude: float
    frequency: float
    phase: float = 0.0

    def at(self, t: float) -> float:
        """Deflection at time t."""
        return self.amplitude * float(np.sin(2.0 * np.pi * self.frequency * t + self.phase))


@dataclass(frozen=True)
class VibrationSet:
    """Harmonic drive of all five mirrors."""
    C: MirrorVibration
    E: MirrorVibration
    A: MirrorVibration
    B: MirrorVibration
    F: MirrorVibration

    @classmethod
    def default(cls, width_y: float = 1.0, record_length: float = 1.0) -> "VibrationSet":
        amplitude = DEFAULT_RELATIVE_AMPLITUDE * width_y
        return cls(**{
            m: MirrorVibration(amplitude, DEFAULT_CYCLES[m] / record_length)
            for m in MIRRORS
        })

    def mirror(self, label: str) -> MirrorVibration:
        return getattr(self, label)

    def items(self) -> Iterator[Tuple[str, MirrorVibration]]:
        for m in MIRRORS:
            yield m, self.mirror(m)

    def frequencies(self) -> Dict[str, float]:
        return {m: v.frequency for m, v in self.items()}

    def amplitudes(self) -> Dict[str, float]:
        return {m: v.amplitude for m, v in self.items()}

    def scaled(self, factor: float) -> "VibrationSet":
        """Multiply every amplitude by `factor`."""
        return VibrationSet(**{m: replace(v, amplitude=v.amplitude * factor) for m, v in self.items()})

    def with_amplitudes(self, amplitude: float) -> "VibrationSet":
        return VibrationSet(**{m: replace(v, amplitude=amplitude) for m, v in self.items()})

    def with_mirror(self, label: str, vibration: MirrorVibration) -> "VibrationSet":
        return replace(self, **{label: vibration})

    def only(self, label: str) -> "VibrationSet":
        """Silence every mirror except `label`."""
        return VibrationSet(**{
            m: v if m == label else replace(v, amplitude=0.0) for m, v in self.items()
        })

    def delayed(self, tau: float) -> "VibrationSet":
        """Advance every phase by 2 pi f tau."""
        return VibrationSet(**{
            m: replace(v, phase=v.phase + 2.0 * np.pi * v.frequency * tau) for m, v in self.items()
        })


@dataclass(frozen=True)
class TimeSeriesConfig:
    """Record length and sample count; samples at t_k = k T / N."""
    n_samples: int = 4096
    record_length: float = 1.0

    def __post_init__(self):
        if self.n_samples < 2:
            raise InputRejected(RejectionReason.VIBRATION_SET, f"n_samples must be at least 2, got {self.n_samples}")
        if not self.record_length > 0:
            raise InputRejected(RejectionReason.VIBRATION_SET, "record_length must be positive")

    @property
    def sample_rate(self) -> float:
        return self.n_samples / self.record_length

    @property
    def nyquist(self) -> float:
        return self.sample_rate / 2.0

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.n_samples) * (self.record_length / self.n_samples)

    def cycles(self, frequency: float) -> float:
        return frequency * self.record_length

    def bin_of(self, frequency: float) -> int:
        """DFT bin nearest the frequency."""
        return int(round(self.cycles(frequency)))


def check_frequency(label: str, frequency: float, ts: TimeSeriesConfig) -> int:
    """Check that a mirror frequency sits on an exact bin below Nyquist and return the bin."""
    c = ts.cycles(frequency)
    if c <= 0 or abs(c - round(c)) > CYCLE_TOLERANCE:
        raise InputRejected(
            RejectionReason.VIBRATION_SET,
            f"mirror {label} makes {c:g} cycles per record; an integer count is required"
        )
    if frequency >= ts.nyquist:
        raise InputRejected(
            RejectionReason.NYQUIST,
            f"mirror {label} frequency {frequency:g} is not below Nyquist {ts.nyquist:g}"
        )
    return int(round(c))


def validate_vibration_set(vib: VibrationSet, ts: TimeSeriesConfig) -> None:
    """Reject drives whose peaks would leak or share a bin with another mirror's products."""
    counts: Dict[str, int] = {}
    for m, v in vib.items():
        counts[m] = check_frequency(m, v.frequency, ts)
        if v.amplitude < 0:
            raise InputRejected(RejectionReason.VIBRATION_SET, f"mirror {m} has a negative amplitude")
    if len(set(counts.values())) != len(counts):
        raise InputRejected(RejectionReason.VIBRATION_SET, f"mirror frequencies must be distinct: {counts}")

    for target, first, second in permutations(MIRRORS, 3):
        ft, f1, f2 = counts[target], counts[first], counts[second]
        if ft in (f1 + f2, abs(f1 - f2)):
            raise InputRejected(
                RejectionReason.VIBRATION_SET,
                f"mirror {target} frequency collides with a mixing product of {first} and {second}"
            )
    for target, other in permutations(MIRRORS, 2):
        if counts[target] == 2 * counts[other]:
            raise InputRejected(
                RejectionReason.VIBRATION_SET,
                f"mirror {target} frequency is the second harmonic of mirror {other}"
            )


def deflections_at(vib: VibrationSet, t: float) -> MirrorDeflections:
    """Instantaneous deflections of all five mirrors at time t."""
    return MirrorDeflections(**{f"delta_{m}": v.at(t) for m, v in vib.items()})


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Detector readings at the record's sample times."""
    times: np.ndarray
    D: np.ndarray
    upper_power: np.ndarray
    lower_power: np.ndarray
    vibrations: VibrationSet = field(repr=False)
    config: TimeSeriesConfig = field(repr=False)

    @property
    def total_power(self) -> np.ndarray:
        return self.upper_power + self.lower_power

    def sample(self, k: int) -> DetectorSample:
        return DetectorSample(float(self.D[k]), float(self.upper_power[k]), float(self.lower_power[k]))

    def __len__(self) -> int:
        return int(self.D.size)


def simulate_run(
    profile: BeamProfile,
    grid: Grid,
    vib: VibrationSet,
    scenario: Scenario,
    ts: TimeSeriesConfig,
    workers: Optional[int] = None
) -> TimeSeries:
    """
    Nonlinear detector series for harmonic deflections.

    Samples are independent; with workers > 1 they are evaluated on a
    thread pool and reassembled in sample order.
    """
    validate_vibration_set(vib, ts)
    times = ts.times

    def _sample(t: float) -> DetectorSample:
        return qcd_difference(compose_field(profile, grid, deflections_at(vib, t), scenario))

    workers = max(1, int(workers or 1))
    logger.info(
        f"Simulating {ts.n_samples} samples: profile={profile.kind.value}, "
        f"tuning={scenario.tuning.value}, blocking={scenario.blocking.value}, workers={workers}"
    )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            samples = list(pool.map(_sample, times))
    else:
        samples = [_sample(t) for t in times]

    return TimeSeries(
        times=times,
        D=np.array([s.D for s in samples]),
        upper_power=np.array([s.upper_power for s in samples]),
        lower_power=np.array([s.lower_power for s in samples]),
        vibrations=vib,
        config=ts
    )
