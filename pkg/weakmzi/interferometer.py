#!/usr/bin/env python3
"""
Weak-MZI Interferometer
Detector-plane field of the nested Mach-Zehnder interferometer

The field is the superposition of three shifted copies of the beam profile,
each carrying a third of the source amplitude:

    E = (sqrt(I0)/3) [ f(x, y - sA) e^{i phiA}
                     + f(x, y - sB) e^{i phiB}
                     + f(x, y - sC) e^{i phiC} ]

with sA = dE + dA + dF, sB = dE + dB + dF and sC = dC. Mirror deflections
enter only as transverse shifts, never as phases. Blocking after mirror F
drops the first two terms; blocking the C arm drops the third.
"""

import logging
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Dict, Mapping, Optional, Tuple

import numpy as np

from weakmzi.errors import InputRejected, RejectionReason
from weakmzi.profiles import BeamProfile, Grid, RefinedGrid, evaluate, sampling_grid

logger = logging.getLogger("WEAKMZI.Interferometer")

MIRRORS: Tuple[str, ...] = ("C", "E", "A", "B", "F")

# Fractions of width_y
HARD_DEFLECTION_BOUND = 0.5
SOFT_DEFLECTION_BOUND = 0.1

# Boundary intensity allowed relative to the peak
COVERAGE_TOLERANCE = 1e-12


class Tuning(Enum):
    """Phase presets of the interferometer."""
    CONSTRUCTIVE = "constructive"
    DESTRUCTIVE_INNER = "destructive"
    CUSTOM = "custom"


class Blocking(Enum):
    """Which beam paths are blocked."""
    NONE = "none"
    AFTER_MIRROR_F = "after_f"
    C_ARM = "c_arm"


@dataclass(frozen=True)
class MirrorDeflections:
    """Instantaneous vertical beam shifts caused by each mirror."""
    delta_C: float = 0.0
    delta_E: float = 0.0
    delta_A: float = 0.0
    delta_B: float = 0.0
    delta_F: float = 0.0

    @classmethod
    def from_mapping(cls, values: Mapping[str, float]) -> "MirrorDeflections":
        """Build from a mirror-to-deflection mapping; missing mirrors are zero."""
        return cls(**{f"delta_{m}": float(values.get(m, 0.0)) for m in MIRRORS})

    def of(self, mirror: str) -> float:
        return getattr(self, f"delta_{mirror}")

    def as_dict(self) -> Dict[str, float]:
        return {m: self.of(m) for m in MIRRORS}

    def scaled(self, factor: float) -> "MirrorDeflections":
        return MirrorDeflections(**{k: v * factor for k, v in asdict(self).items()})

    def negated(self) -> "MirrorDeflections":
        return MirrorDeflections(**{k: -v for k, v in asdict(self).items()})

    def max_abs(self) -> float:
        return max(abs(v) for v in asdict(self).values())


@dataclass(frozen=True)
class PhaseConfig:
    """Accumulated phases of the three paths, stored as given."""
    phi_A: float = 0.0
    phi_B: float = 0.0
    phi_C: float = 0.0

    def of(self, path: str) -> float:
        return getattr(self, f"phi_{path}")

    def difference(self, i: str, j: str) -> float:
        return self.of(i) - self.of(j)

    @property
    def phi_AB(self) -> float:
        return self.phi_A - self.phi_B

    @property
    def phi_AC(self) -> float:
        return self.phi_A - self.phi_C

    @property
    def phi_BC(self) -> float:
        return self.phi_B - self.phi_C

    def shifted(self, offset: float) -> "PhaseConfig":
        return PhaseConfig(self.phi_A + offset, self.phi_B + offset, self.phi_C + offset)


@dataclass(frozen=True)
class Scenario:
    """
    Tuning preset, blocking and source intensity.

    Destructive tuning uses phi_A = phi_C = 0 and phi_B = destructive_sign * pi.
    detuning_B is added to phi_B of the preset; it exists to build
    deliberately mis-tuned runs.
    """
    tuning: Tuning = Tuning.CONSTRUCTIVE
    blocking: Blocking = Blocking.NONE
    source_intensity: float = 1.0
    custom_phases: Optional[PhaseConfig] = None
    destructive_sign: int = 1
    detuning_B: float = 0.0

    def __post_init__(self):
        if not self.source_intensity > 0:
            raise InputRejected(
                RejectionReason.CONFIG_INVALID,
                f"source intensity must be positive, got {self.source_intensity}"
            )
        if self.tuning is Tuning.CUSTOM and self.custom_phases is None:
            raise InputRejected(RejectionReason.CONFIG_INVALID, "custom tuning requires phases")
        if self.destructive_sign not in (1, -1):
            raise InputRejected(RejectionReason.CONFIG_INVALID, "destructive_sign must be +1 or -1")

    @classmethod
    def constructive(cls, blocking: Blocking = Blocking.NONE, source_intensity: float = 1.0) -> "Scenario":
        return cls(Tuning.CONSTRUCTIVE, blocking, source_intensity)

    @classmethod
    def destructive(
        cls,
        blocking: Blocking = Blocking.NONE,
        source_intensity: float = 1.0,
        sign: int = 1,
        detuning_B: float = 0.0
    ) -> "Scenario":
        """Inner loop tuned dark, phi_B = sign * pi plus any detuning."""
        return cls(Tuning.DESTRUCTIVE_INNER, blocking, source_intensity,
                   destructive_sign=sign, detuning_B=detuning_B)

    @classmethod
    def custom(
        cls,
        phases: PhaseConfig,
        blocking: Blocking = Blocking.NONE,
        source_intensity: float = 1.0
    ) -> "Scenario":
        return cls(Tuning.CUSTOM, blocking, source_intensity, custom_phases=phases)

    @property
    def phases(self) -> PhaseConfig:
        if self.tuning is Tuning.CUSTOM:
            base = self.custom_phases
        elif self.tuning is Tuning.DESTRUCTIVE_INNER:
            base = PhaseConfig(0.0, self.destructive_sign * np.pi, 0.0)
        else:
            base = PhaseConfig()
        if self.detuning_B:
            return PhaseConfig(base.phi_A, base.phi_B + self.detuning_B, base.phi_C)
        return base

    def with_blocking(self, blocking: Blocking) -> "Scenario":
        """Copy with a different blocking."""
        return Scenario(self.tuning, blocking, self.source_intensity,
                        self.custom_phases, self.destructive_sign, self.detuning_B)

    def to_dict(self) -> dict:
        p = self.phases
        return {
            "tuning": self.tuning.value,
            "blocking": self.blocking.value,
            "source_intensity": self.source_intensity,
            "phi_A": p.phi_A,
            "phi_B": p.phi_B,
            "phi_C": p.phi_C
        }


@dataclass(frozen=True, eq=False)
class FieldMap:
    """Complex amplitude sampled on a grid, shaped (ny, nx)."""
    values: np.ndarray
    grid: RefinedGrid = field(repr=False)

    @property
    def intensity(self) -> np.ndarray:
        return self.values.real ** 2 + self.values.imag ** 2

    def total_power(self) -> float:
        return float(np.sum(self.intensity * self.grid.cell_areas))


def term_shifts(deflections: MirrorDeflections) -> Tuple[float, float, float]:
    """Total vertical shifts of the A-path, B-path and C-path copies."""
    d = deflections
    return (
        d.delta_E + d.delta_A + d.delta_F,
        d.delta_E + d.delta_B + d.delta_F,
        d.delta_C
    )


def check_deflections(deflections: MirrorDeflections, profile: BeamProfile) -> None:
    """Reject deflections beyond half the beam depth; warn above a tenth of it."""
    hard = HARD_DEFLECTION_BOUND * profile.width_y
    soft = SOFT_DEFLECTION_BOUND * profile.width_y
    for mirror, value in deflections.as_dict().items():
        if abs(value) > hard:
            raise InputRejected(
                RejectionReason.DEFLECTION_BOUND,
                f"deflection of mirror {mirror} is {value:g}, above the bound {hard:g}"
            )
        if abs(value) > soft:
            logger.warning(f"Deflection of mirror {mirror} ({value:g}) exceeds width_y/10")


def _check_coverage(values: np.ndarray) -> None:
    """Reject fields whose boundary intensity is not negligible."""
    intensity = values.real ** 2 + values.imag ** 2
    peak = float(intensity.max()) if intensity.size else 0.0
    if peak == 0.0:
        return
    edge = max(
        float(intensity[0, :].max()), float(intensity[-1, :].max()),
        float(intensity[:, 0].max()), float(intensity[:, -1].max())
    )
    if edge > COVERAGE_TOLERANCE * peak:
        raise InputRejected(
            RejectionReason.GRID_COVERAGE,
            f"boundary intensity is {edge / peak:.3g} of the peak; enlarge the grid extent"
        )


def _superpose(
    profile: BeamProfile,
    g: RefinedGrid,
    terms: Tuple[Tuple[float, float], ...],
    source_intensity: float
) -> np.ndarray:
    x = g.x[np.newaxis, :]
    y = g.y[:, np.newaxis]
    total = np.zeros(g.shape, dtype=complex)
    for shift, phase in terms:
        total += evaluate(profile, x, y - shift) * np.exp(1j * phase)
    return (np.sqrt(source_intensity) / 3.0) * total


def _detector_terms(deflections: MirrorDeflections, scenario: Scenario) -> Tuple[Tuple[float, float], ...]:
    """(shift, phase) of every unblocked copy reaching the detector."""
    s_a, s_b, s_c = term_shifts(deflections)
    phases = scenario.phases
    terms = []
    if scenario.blocking is not Blocking.AFTER_MIRROR_F:
        terms.append((s_a, phases.phi_A))
        terms.append((s_b, phases.phi_B))
    if scenario.blocking is not Blocking.C_ARM:
        terms.append((s_c, phases.phi_C))
    return tuple(terms)


def _inner_terms(deflections: MirrorDeflections, scenario: Scenario) -> Tuple[Tuple[float, float], ...]:
    """(shift, phase) of the A and B copies at the inner output."""
    d = deflections
    phases = scenario.phases
    return ((d.delta_E + d.delta_A, phases.phi_A), (d.delta_E + d.delta_B, phases.phi_B))


def compose_field(
    profile: BeamProfile,
    grid: Grid,
    deflections: MirrorDeflections,
    scenario: Scenario
) -> FieldMap:
    """Field in the detector plane for the given instantaneous deflections."""
    check_deflections(deflections, profile)

    # Every copy's edges refine the grid regardless of blocking
    g = sampling_grid(profile, grid, term_shifts(deflections))

    values = _superpose(profile, g, _detector_terms(deflections, scenario), scenario.source_intensity)
    _check_coverage(values)
    return FieldMap(values, g)


def inner_output_field(
    profile: BeamProfile,
    grid: Grid,
    deflections: MirrorDeflections,
    scenario: Scenario
) -> FieldMap:
    """Output of the inner interferometer in front of mirror F."""
    check_deflections(deflections, profile)
    terms = _inner_terms(deflections, scenario)
    g = sampling_grid(profile, grid, [shift for shift, _ in terms])
    values = _superpose(profile, g, terms, scenario.source_intensity)
    _check_coverage(values)
    return FieldMap(values, g)


class CutPlane(Enum):
    """Where a transverse cut of the field is taken."""
    INNER_OUTPUT = "inner_output"
    DETECTOR = "detector"


@dataclass(frozen=True, eq=False)
class FieldCut:
    """
    Complex amplitude along the line x = 0 at mirror-symmetric heights y.

    The even part of the intensity adds the same power to both detector
    halves and leaves D unchanged; only the odd part contributes.
    """
    plane: CutPlane
    y: np.ndarray
    values: np.ndarray

    @property
    def intensity(self) -> np.ndarray:
        return self.values.real ** 2 + self.values.imag ** 2

    @property
    def even_intensity(self) -> np.ndarray:
        i = self.intensity
        return 0.5 * (i + i[::-1])

    @property
    def odd_intensity(self) -> np.ndarray:
        i = self.intensity
        return 0.5 * (i - i[::-1])


def transverse_cut(
    profile: BeamProfile,
    grid: Grid,
    deflections: MirrorDeflections,
    scenario: Scenario,
    plane: CutPlane = CutPlane.DETECTOR
) -> FieldCut:
    """Field along x = 0 at the grid's uniform y nodes, in front of mirror F or at the detector."""
    check_deflections(deflections, profile)
    if plane is CutPlane.INNER_OUTPUT:
        terms = _inner_terms(deflections, scenario)
    else:
        terms = _detector_terms(deflections, scenario)

    y = grid.uniform().y
    total = np.zeros(y.shape, dtype=complex)
    for shift, phase in terms:
        total += evaluate(profile, 0.0, y - shift) * np.exp(1j * phase)
    return FieldCut(plane, y, (np.sqrt(scenario.source_intensity) / 3.0) * total)
