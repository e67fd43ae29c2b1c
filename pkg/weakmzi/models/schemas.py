"""
Weak-MZI Configuration Schemas
Pydantic models for run configuration files

Every model forbids unknown keys so that a misspelled key is reported by
name. Parse -> model_dump(mode="json") -> parse is the identity.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from weakmzi.dynamics import DEFAULT_CYCLES, DEFAULT_RELATIVE_AMPLITUDE, MirrorVibration, TimeSeriesConfig, VibrationSet
from weakmzi.interferometer import Blocking, PhaseConfig, Scenario, Tuning
from weakmzi.profiles import BeamProfile, Grid, ProfileKind


# Enumerations
class ProfileKindName(str, Enum):
    GAUSSIAN = "gaussian"
    RECTANGULAR = "rectangular"
    ASYMMETRIC_TEST = "asymmetric_test"


class TuningName(str, Enum):
    CONSTRUCTIVE = "constructive"
    DESTRUCTIVE = "destructive"
    CUSTOM = "custom"


class BlockingName(str, Enum):
    NONE = "none"
    AFTER_F = "after_f"
    C_ARM = "c_arm"


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


# Beam and grid
class ProfileSpec(StrictModel):
    """Transverse beam profile."""
    kind: ProfileKindName = Field(ProfileKindName.GAUSSIAN, description="Profile shape")
    width_x: float = Field(1.0, gt=0, description="Width along x (half-width for smooth kinds, full width for rectangular)")
    width_y: float = Field(1.0, gt=0, description="Width along y (half-width for smooth kinds, full depth for rectangular)")
    skew: float = Field(0.0, gt=-1, lt=1, description="Asymmetry of the asymmetric_test kind")

    @model_validator(mode="after")
    def _skew_only_for_asymmetric(self) -> "ProfileSpec":
        if self.skew != 0.0 and self.kind is not ProfileKindName.ASYMMETRIC_TEST:
            raise ValueError("skew is only valid for kind 'asymmetric_test'")
        return self

    def to_profile(self) -> BeamProfile:
        return BeamProfile(ProfileKind(self.kind.value), self.width_x, self.width_y, self.skew)


class GridSpec(StrictModel):
    """Sampling grid, extents given in units of the profile widths."""
    nx: int = Field(32, ge=1, description="Cells along x")
    ny: int = Field(500, ge=2, description="Cells along y (even)")
    extent_x: float = Field(5.0, gt=0, description="Half-extent along x, in width_x")
    extent_y: float = Field(5.0, gt=0, description="Half-extent along y, in width_y")

    @field_validator("ny")
    @classmethod
    def _ny_even(cls, value: int) -> int:
        if value % 2:
            raise ValueError("ny must be even so that y = 0 is a cell edge")
        return value

    def to_grid(self, profile: BeamProfile) -> Grid:
        return Grid(self.nx, self.ny, self.extent_x * profile.width_x, self.extent_y * profile.width_y)


# Vibrations
class MirrorVibrationSpec(StrictModel):
    amplitude: float = Field(..., ge=0, description="Deflection amplitude (length)")
    frequency: float = Field(..., gt=0, description="Frequency (cycles per unit time)")
    phase: float = Field(0.0, description="Phase offset (radians)")

    def to_vibration(self) -> MirrorVibration:
        return MirrorVibration(self.amplitude, self.frequency, self.phase)


class VibrationSpec(StrictModel):
    """Harmonic drive of the five mirrors."""
    C: MirrorVibrationSpec
    E: MirrorVibrationSpec
    A: MirrorVibrationSpec
    B: MirrorVibrationSpec
    F: MirrorVibrationSpec

    @classmethod
    def default(cls, width_y: float = 1.0, record_length: float = 1.0) -> "VibrationSpec":
        return cls(**{
            m: MirrorVibrationSpec(
                amplitude=DEFAULT_RELATIVE_AMPLITUDE * width_y,
                frequency=cycles / record_length
            )
            for m, cycles in DEFAULT_CYCLES.items()
        })

    def to_vibration_set(self) -> VibrationSet:
        return VibrationSet(**{m: getattr(self, m).to_vibration() for m in ("C", "E", "A", "B", "F")})


# Scenario
class PhaseSpec(StrictModel):
    phi_A: float = Field(0.0, description="Phase of the A path (radians)")
    phi_B: float = Field(0.0, description="Phase of the B path (radians)")
    phi_C: float = Field(0.0, description="Phase of the C path (radians)")


class ScenarioSpec(StrictModel):
    """Tuning, blocking and source intensity."""
    tuning: TuningName = Field(TuningName.CONSTRUCTIVE, description="Phase preset")
    blocking: BlockingName = Field(BlockingName.NONE, description="Blocked beam path")
    source_intensity: float = Field(1.0, gt=0, description="Source intensity I0")
    phases: Optional[PhaseSpec] = Field(None, description="Phases for custom tuning")
    detuning_B: float = Field(0.0, description="Extra phase added to phi_B (radians)")

    @model_validator(mode="after")
    def _custom_needs_phases(self) -> "ScenarioSpec":
        if self.tuning is TuningName.CUSTOM and self.phases is None:
            raise ValueError("custom tuning requires 'phases'")
        return self

    def to_scenario(self) -> Scenario:
        phases = None
        if self.phases is not None:
            phases = PhaseConfig(self.phases.phi_A, self.phases.phi_B, self.phases.phi_C)
        return Scenario(
            tuning=Tuning(self.tuning.value),
            blocking=Blocking(self.blocking.value),
            source_intensity=self.source_intensity,
            custom_phases=phases if self.tuning is TuningName.CUSTOM else None,
            detuning_B=self.detuning_B
        )


class TimeSeriesSpec(StrictModel):
    n_samples: int = Field(4096, ge=2, description="Samples per record")
    record_length: float = Field(1.0, gt=0, description="Record duration")

    def to_config(self) -> TimeSeriesConfig:
        return TimeSeriesConfig(self.n_samples, self.record_length)


class OutputSpec(StrictModel):
    directory: str = Field("out", description="Directory for CSV output")
    time_series_csv: str = Field("time_series.csv", description="Time-series file name")
    spectrum_csv: str = Field("spectrum.csv", description="Spectrum file name")
    sweep_csv: str = Field("sweep.csv", description="Sweep file name")
    profile_csv: str = Field("profile.csv", description="Transverse profile file name")


# Run configuration
class RunConfig(StrictModel):
    """A complete simulation run."""
    name: str = Field(..., min_length=1, description="Run name")
    description: str = Field("", description="Free text")
    profile: ProfileSpec = Field(default_factory=ProfileSpec)
    grid: GridSpec = Field(default_factory=GridSpec)
    vibrations: Optional[VibrationSpec] = Field(None, description="Defaults to the standard drive when omitted")
    scenario: ScenarioSpec = Field(default_factory=ScenarioSpec)
    time_series: TimeSeriesSpec = Field(default_factory=TimeSeriesSpec)
    output: OutputSpec = Field(default_factory=OutputSpec)

    @model_validator(mode="after")
    def _fill_vibrations(self) -> "RunConfig":
        if self.vibrations is None:
            self.vibrations = VibrationSpec.default(self.profile.width_y, self.time_series.record_length)
        return self

    def build(self):
        """Domain objects: (profile, grid, vibrations, scenario, time series config)."""
        profile = self.profile.to_profile()
        return (
            profile,
            self.grid.to_grid(profile),
            self.vibrations.to_vibration_set(),
            self.scenario.to_scenario(),
            self.time_series.to_config()
        )
