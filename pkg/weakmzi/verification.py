#!/usr/bin/env python3
"""
Weak-MZI Verification
Perturbation-order fits, rectangular-profile exactness and the acceptance matrix

The acceptance matrix runs every criterion inside a CriterionGuard; a check
that raises becomes a failed entry and the remaining checks still run.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from weakmzi.analytic import linearized_signal, predicted_peak_powers
from weakmzi.config import PresetStore, get_preset_store
from weakmzi.detector import effective_line_integral, parity_split, qcd_difference
from weakmzi.dynamics import TimeSeries, TimeSeriesConfig, VibrationSet, simulate_run
from weakmzi.errors import CriterionGuard, InputRejected, RejectionReason
from weakmzi.interferometer import (
    MIRRORS,
    Blocking,
    MirrorDeflections,
    PhaseConfig,
    Scenario,
    compose_field,
    inner_output_field,
    term_shifts,
)
from weakmzi.models.schemas import ProfileKindName, RunConfig
from weakmzi.profiles import BeamProfile, Grid, ProfileKind, evaluate, line_integral_f2
from weakmzi.spectrum import (
    DETECTABILITY_FACTOR,
    SpectrumReport,
    ac_power,
    is_detectable,
    peak_amplitude,
    peak_ratio,
    power_spectrum,
)

logger = logging.getLogger("WEAKMZI.Verification")

# Order fits use a shorter record; harmonics up to fifth order stay below Nyquist
FIT_SAMPLES = 1024
DEFAULT_FIT_SCALES: Tuple[float, ...] = (1e-3, 2e-3, 4e-3, 8e-3, 16e-3, 32e-3)
MIN_FIT_DECADES = 1.5

EXACTNESS_TOLERANCE = 1e-10
RATIO_TOLERANCE = 0.01
GAUSSIAN_SUPPRESSION = 1e-6
RECT_SUPPRESSION = 1e-10
AC_RMS_LIMIT = 1e-10
E_NULL_LIMIT = 1e-14
SYMMETRIC_ORDER = 2.8
ASYMMETRIC_ORDER = 1.8
RESIDUAL_ORDER = 1.8
NEGATIVE_CONTROL_DETUNING = 0.1
ASYMMETRIC_SKEW = 0.3


class OrderQuantity(Enum):
    """Quantities whose scaling order is fitted."""
    F_PEAK = "f_peak_amplitude"
    A_PEAK = "a_peak_amplitude"
    LINEARIZATION_RESIDUAL = "linearization_residual"


@dataclass
class OrderFit:
    quantity: str
    scales: List[float]
    values: List[float]
    floors: List[float]
    slope: Optional[float]
    suppressed: bool
    monotone: bool

    def satisfies(self, threshold: float) -> bool:
        """Suppressed below the floor counts as satisfying an order bound."""
        return self.suppressed or (self.slope is not None and self.slope >= threshold)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "quantity": self.quantity,
            "scales": self.scales,
            "values": self.values,
            "floors": self.floors,
            "slope": self.slope,
            "suppressed": self.suppressed,
            "monotone": self.monotone
        }


def _fit_slope(quantity: str, scales: Sequence[float], values: Sequence[float], floors: Sequence[float]) -> OrderFit:
    """Fit a log-log slope to the values that clear their numeric floor."""
    measurable = [(s, v) for s, v, f in zip(scales, values, floors) if v > f]
    if len(measurable) < 2:
        logger.info(f"Order fit of {quantity}: suppressed below the numeric floor")
        return OrderFit(quantity, list(scales), list(values), list(floors), None, True, True)

    log_s = np.log([s for s, _ in measurable])
    log_v = np.log([v for _, v in measurable])
    slope = float(np.polyfit(log_s, log_v, 1)[0])
    measured = [v for _, v in measurable]
    monotone = all(b > a for a, b in zip(measured, measured[1:]))
    logger.info(f"Order fit of {quantity}: slope {slope:.3f} over {len(measurable)} scales")
    return OrderFit(quantity, list(scales), list(values), list(floors), slope, False, monotone)


def _check_scales(scales: Sequence[float], profile: BeamProfile) -> None:
    """Reject fit scales that are too few, non-positive or past the deflection bound."""
    if len(scales) < 2 or min(scales) <= 0:
        raise InputRejected(RejectionReason.CONFIG_INVALID, "order fits need at least two positive scales")
    if max(scales) > 0.5:
        raise InputRejected(RejectionReason.DEFLECTION_BOUND, f"scale {max(scales)} exceeds the deflection bound")
    decades = np.log10(max(scales) / min(scales))
    if decades < MIN_FIT_DECADES:
        logger.warning(f"Order-fit scales span {decades:.2f} decades, fewer than {MIN_FIT_DECADES}")


def order_fit(
    scenario: Scenario,
    profile: BeamProfile,
    target: OrderQuantity,
    scales: Sequence[float] = DEFAULT_FIT_SCALES,
    grid: Optional[Grid] = None,
    ts: Optional[TimeSeriesConfig] = None,
    workers: Optional[int] = None
) -> OrderFit:
    """
    Fit log(quantity) against log(scale), where every mirror is driven at
    amplitude scale * width_y on the default frequencies.
    """
    _check_scales(scales, profile)
    grid = grid or Grid.for_profile(profile)
    ts = ts or TimeSeriesConfig(FIT_SAMPLES)
    line_int = effective_line_integral(profile, grid) if target is OrderQuantity.LINEARIZATION_RESIDUAL else 0.0
    base = VibrationSet.default(profile.width_y, ts.record_length)

    values, floors = [], []
    for s in scales:
        vib = base.with_amplitudes(s * profile.width_y)
        report = power_spectrum(simulate_run(profile, grid, vib, scenario, ts, workers))
        floor = float(np.sqrt(2.0 * DETECTABILITY_FACTOR * report.noise_floor))

        if target is OrderQuantity.F_PEAK:
            value = peak_amplitude(report, "F")
        elif target is OrderQuantity.A_PEAK:
            value = peak_amplitude(report, "A")
        else:
            predicted = predicted_peak_powers(vib, scenario, line_int)
            value = sum(
                abs(peak_amplitude(report, m) - np.sqrt(2.0 * predicted[m])) for m in MIRRORS
            )
        logger.debug(f"{target.value} at scale {s:g}: {value:.6e} (floor {floor:.3e})")
        values.append(float(value))
        floors.append(floor)

    return _fit_slope(target.value, scales, values, floors)


def parity_order_fit(
    profile: BeamProfile,
    scales: Sequence[float] = DEFAULT_FIT_SCALES,
    grid: Optional[Grid] = None
) -> OrderFit:
    """
    Order of the y-odd part of the inner interferometer's output intensity
    when it is tuned dark and mirror A alone is deflected.
    """
    _check_scales(scales, profile)
    grid = grid or Grid.for_profile(profile)
    scenario = Scenario.destructive()
    values, floors = [], []
    for s in scales:
        deflections = MirrorDeflections(delta_A=s * profile.width_y)
        even, odd = parity_split(inner_output_field(profile, grid, deflections, scenario))
        values.append(odd)
        floors.append(1e-13 * even)
    return _fit_slope("inner_output_odd_part", scales, values, floors)


# ---------------------------------------------------------------------------
# Rectangular-profile exactness
# ---------------------------------------------------------------------------

@dataclass
class ExactnessCase:
    deflections: MirrorDeflections
    scenario: Scenario
    in_domain: bool
    measured: Optional[float] = None
    predicted: Optional[float] = None
    discrepancy: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "deflections": self.deflections.as_dict(),
            "scenario": self.scenario.to_dict(),
            "in_domain": self.in_domain,
            "measured": self.measured,
            "predicted": self.predicted,
            "discrepancy": self.discrepancy
        }


@dataclass
class ExactnessReport:
    cases: List[ExactnessCase] = field(default_factory=list)
    tolerance: float = EXACTNESS_TOLERANCE

    @property
    def checked(self) -> List[ExactnessCase]:
        return [c for c in self.cases if c.in_domain]

    @property
    def excluded(self) -> List[ExactnessCase]:
        return [c for c in self.cases if not c.in_domain]

    @property
    def max_discrepancy(self) -> float:
        return max((c.discrepancy for c in self.checked), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_discrepancy <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "checked": len(self.checked),
            "excluded": len(self.excluded),
            "max_discrepancy": self.max_discrepancy,
            "passed": self.passed,
            "cases": [c.to_dict() for c in self.cases]
        }


def in_exactness_domain(deflections: MirrorDeflections, profile: BeamProfile) -> bool:
    """Every path's total deviation is within half the beam depth."""
    half = profile.width_y / 2.0
    return all(abs(s) <= half for s in term_shifts(deflections))


def exactness_scenarios() -> List[Scenario]:
    """Scenarios every exactness case is checked under."""
    return [
        Scenario.constructive(),
        Scenario.destructive(),
        Scenario.destructive(blocking=Blocking.AFTER_MIRROR_F),
        Scenario.constructive(blocking=Blocking.C_ARM),
        Scenario.custom(PhaseConfig(0.3, 1.1, -0.7)),
    ]


def default_exactness_sets(depth: float = 1.0) -> List[Union[MirrorDeflections, Tuple[MirrorDeflections, Scenario]]]:
    """
    Deflection cases for the rectangular exactness check.

    A bare MirrorDeflections is checked under every exactness scenario; a pair
    fixes the scenario. The last case lies outside the bound and is excluded.
    """
    return [
        (MirrorDeflections(delta_C=0.1 * depth), Scenario.constructive(blocking=Blocking.AFTER_MIRROR_F)),
        (MirrorDeflections(delta_A=0.05 * depth, delta_F=0.05 * depth), Scenario.destructive()),
        MirrorDeflections(0.02 * depth, 0.01 * depth, -0.03 * depth, 0.04 * depth, 0.015 * depth),
        MirrorDeflections(-0.1 * depth, 0.1 * depth, 0.1 * depth, -0.1 * depth, 0.1 * depth),
        (MirrorDeflections(delta_A=0.6 * depth), Scenario.destructive()),
    ]


def rect_exactness(
    deflection_sets: Sequence[Union[MirrorDeflections, Tuple[MirrorDeflections, Scenario]]],
    scenarios: Optional[Sequence[Scenario]] = None,
    profile: Optional[BeamProfile] = None,
    grid: Optional[Grid] = None
) -> ExactnessReport:
    """
    Compare the nonlinear detector with the linearized signal for a
    rectangular beam. Sets given without a scenario are checked under every
    scenario in `scenarios`; sets outside the exactness domain are excluded.
    """
    profile = profile or BeamProfile.rectangular()
    if profile.kind is not ProfileKind.RECTANGULAR:
        raise InputRejected(RejectionReason.PROFILE_PARAMETERS, "exactness holds for the rectangular profile only")
    grid = grid or Grid.for_profile(profile)
    scenarios = list(scenarios or exactness_scenarios())
    line_int = line_integral_f2(profile)

    report = ExactnessReport()
    for item in deflection_sets:
        deflections, own = (item if isinstance(item, tuple) else (item, None))
        for scenario in ([own] if own is not None else scenarios):
            if not in_exactness_domain(deflections, profile):
                logger.info(f"Deflections {deflections.as_dict()} outside the exactness domain, excluded")
                report.cases.append(ExactnessCase(deflections, scenario, in_domain=False))
                continue

            measured = qcd_difference(compose_field(profile, grid, deflections, scenario)).D
            predicted = linearized_signal(deflections, scenario, line_int)
            scale = (2.0 / 9.0) * scenario.source_intensity * line_int \
                * max(deflections.max_abs(), 1e-3 * profile.width_y)
            discrepancy = abs(measured - predicted) / max(abs(predicted), scale)
            report.cases.append(ExactnessCase(deflections, scenario, True, measured, predicted, discrepancy))

    logger.info(
        f"Rect exactness: {len(report.checked)} cases, max discrepancy {report.max_discrepancy:.3e}, "
        f"{len(report.excluded)} excluded"
    )
    return report


# ---------------------------------------------------------------------------
# Acceptance matrix
# ---------------------------------------------------------------------------

@dataclass
class CriterionResult:
    id: int
    name: str
    measured: float
    threshold: float
    passed: bool
    expected_fail: bool = False
    gating: bool = True
    detail: str = ""
    values: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "name": self.name,
            "measured": self.measured,
            "threshold": self.threshold,
            "passed": self.passed,
            "expected_fail": self.expected_fail,
            "gating": self.gating,
            "detail": self.detail,
            "values": self.values
        }


@dataclass
class AcceptanceReport:
    results: List[CriterionResult] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results if r.gating)

    def by_name(self, name: str) -> CriterionResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "all_passed": self.all_passed,
            "criteria": [r.to_dict() for r in self.results]
        }


@dataclass
class _Run:
    config: RunConfig
    profile: BeamProfile
    grid: Grid
    vibrations: VibrationSet
    scenario: Scenario
    series: TimeSeries
    spectrum: SpectrumReport
    line_int: float


def _relative_spread(values: Sequence[float]) -> float:
    """Largest over smallest, minus one."""
    return max(values) / min(values) - 1.0


class AcceptanceMatrix:
    """Runs the acceptance criteria over the shipped presets."""

    def __init__(self, store: Optional[PresetStore] = None, workers: Optional[int] = None):
        self.store = store or get_preset_store()
        self.workers = workers
        self._runs: Dict[Tuple[str, str, float], _Run] = {}

    def run(self, preset: str, kind: Optional[str] = None, detuning_B: float = 0.0) -> _Run:
        """Simulate a preset once, with optional profile kind and phi_B detuning overrides."""
        key = (preset, kind or "", detuning_B)
        if key not in self._runs:
            config = self.store.get(preset)
            if kind is not None:
                config.profile.kind = ProfileKindName(kind)
            config.scenario.detuning_B = detuning_B
            profile, grid, vib, scenario, ts = config.build()
            series = simulate_run(profile, grid, vib, scenario, ts, self.workers)
            self._runs[key] = _Run(
                config, profile, grid, vib, scenario, series,
                power_spectrum(series), line_integral_f2(profile)
            )
        return self._runs[key]

    def evaluate(self) -> AcceptanceReport:
        """Run every criterion; one that raises is recorded as failed."""
        report = AcceptanceReport()
        checks: List[Tuple[int, str, float, Callable[[], List[CriterionResult]]]] = [
            (1, "constructive_ratio", 4.0, self.constructive_ratio),
            (2, "destructive_signature", GAUSSIAN_SUPPRESSION, self.destructive_signature),
            (3, "block_after_f", DETECTABILITY_FACTOR, self.block_after_f),
            (4, "block_c_arm", AC_RMS_LIMIT, self.block_c_arm),
            (5, "rect_exactness", EXACTNESS_TOLERANCE, self.rect_exactness),
            (6, "order_fits", SYMMETRIC_ORDER, self.order_fits),
            (7, "e_mirror_null", E_NULL_LIMIT, self.e_mirror_null),
            (8, "oracle_agreement", RATIO_TOLERANCE, self.oracle_agreement),
            (9, "negative_control", GAUSSIAN_SUPPRESSION, self.negative_control),
            (10, "inner_output_parity", 0.0, self.inner_output_parity),
        ]
        for number, name, threshold, check in checks:
            guard = CriterionGuard(name)
            with guard:
                results = check()
            if guard.failed:
                results = [CriterionResult(number, name, float("nan"), threshold, False, detail=guard.error_text)]
            for r in results:
                logger.info(f"Criterion {r.id} {r.name}: measured {r.measured:.6g} "
                            f"(threshold {r.threshold:g}) {'PASSED' if r.passed else 'FAILED'}")
            report.results.extend(results)
        return report

    def _suppression(self, spectrum: SpectrumReport) -> float:
        return max(peak_ratio(spectrum, "E", "A"), peak_ratio(spectrum, "F", "A"))

    def constructive_ratio(self) -> List[CriterionResult]:
        """E and F peaks four times the A peak in the constructive setting."""
        s = self.run("constructive").spectrum
        e_a = peak_ratio(s, "E", "A")
        f_a = peak_ratio(s, "F", "A")
        spread = _relative_spread([s.peak_power[m] for m in ("A", "B", "C")])
        passed = (abs(e_a / 4.0 - 1.0) <= RATIO_TOLERANCE
                  and abs(f_a / 4.0 - 1.0) <= RATIO_TOLERANCE
                  and spread <= RATIO_TOLERANCE)
        return [CriterionResult(
            1, "constructive_ratio", e_a, 4.0, passed,
            detail="E/A and F/A equal 4 within 1%, A, B, C equal within 1%",
            values={"E/A": e_a, "F/A": f_a, "ABC_spread": spread}
        )]

    def destructive_signature(self) -> List[CriterionResult]:
        """E and F peaks vanish in the destructive setting while A, B and C stay equal."""
        gaussian = self.run("destructive").spectrum
        rect = self.run("destructive", kind="rectangular").spectrum
        spread = _relative_spread([gaussian.peak_power[m] for m in ("A", "B", "C")])
        g_supp = self._suppression(gaussian)
        r_supp = self._suppression(rect)
        passed = spread <= RATIO_TOLERANCE and g_supp < GAUSSIAN_SUPPRESSION and r_supp < RECT_SUPPRESSION
        return [CriterionResult(
            2, "destructive_signature", g_supp, GAUSSIAN_SUPPRESSION, passed,
            detail="E, F below 1e-6 of A (gaussian) and 1e-10 of A (rectangular)",
            values={"ABC_spread": spread, "gaussian_EF_over_A": g_supp, "rect_EF_over_A": r_supp}
        )]

    def block_after_f(self) -> List[CriterionResult]:
        """Only mirror C is visible when the beam is blocked after F."""
        s = self.run("block-after-f").spectrum
        others = {m: s.peak_power[m] / s.noise_floor for m in MIRRORS if m != "C"}
        worst = max(others.values())
        passed = is_detectable(s, "C") and not any(is_detectable(s, m) for m in others)
        return [CriterionResult(
            3, "block_after_f", worst, DETECTABILITY_FACTOR, passed,
            detail="only the C peak exceeds 10x the noise floor",
            values={"C_over_floor": s.peak_power["C"] / s.noise_floor, **{f"{m}_over_floor": v for m, v in others.items()}}
        )]

    def block_c_arm(self) -> List[CriterionResult]:
        rect = self.run("block-c-arm")
        detectable = [m for m in MIRRORS if is_detectable(rect.spectrum, m)]
        rms = float(np.sqrt(ac_power(rect.series)))
        limit = AC_RMS_LIMIT * rect.scenario.source_intensity

        gaussian = self.run("block-c-arm", kind="gaussian").spectrum
        reference = self.run("destructive").spectrum.peak_power["A"]
        gaussian_worst = max(gaussian.peak_power.values()) / reference

        passed = not detectable and rms < limit and gaussian_worst < GAUSSIAN_SUPPRESSION
        return [CriterionResult(
            4, "block_c_arm", rms, limit, passed,
            detail="no peak above 10x floor and AC rms below 1e-10 I0 (rectangular); "
                   "gaussian peaks below 1e-6 of the destructive A peak",
            values={"detectable": detectable, "ac_rms": rms, "gaussian_peak_over_A": gaussian_worst}
        )]

    def rect_exactness(self) -> List[CriterionResult]:
        """Rectangular beams match the closed-form signal."""
        report = rect_exactness(default_exactness_sets())
        return [CriterionResult(
            5, "rect_exactness", report.max_discrepancy, EXACTNESS_TOLERANCE, report.passed,
            detail=f"{len(report.checked)} cases checked, {len(report.excluded)} outside the domain",
            values={"checked": len(report.checked), "excluded": len(report.excluded)}
        )]

    def order_fits(self) -> List[CriterionResult]:
        """Scaling orders of the vanishing peaks and the linearization residual."""
        gaussian = BeamProfile.gaussian()
        asymmetric = BeamProfile.asymmetric_test(skew=ASYMMETRIC_SKEW)
        cases = [
            ("order_f_peak_gaussian", Scenario.destructive(), gaussian, OrderQuantity.F_PEAK, SYMMETRIC_ORDER),
            ("order_f_peak_asymmetric", Scenario.destructive(), asymmetric, OrderQuantity.F_PEAK, ASYMMETRIC_ORDER),
            ("order_a_peak_c_arm_gaussian", Scenario.destructive(Blocking.C_ARM), gaussian,
             OrderQuantity.A_PEAK, SYMMETRIC_ORDER),
            ("order_a_peak_c_arm_asymmetric", Scenario.destructive(Blocking.C_ARM), asymmetric,
             OrderQuantity.A_PEAK, ASYMMETRIC_ORDER),
            ("order_linearization_residual", Scenario.constructive(), gaussian,
             OrderQuantity.LINEARIZATION_RESIDUAL, RESIDUAL_ORDER),
        ]
        results = []
        for name, scenario, profile, quantity, threshold in cases:
            fit = order_fit(scenario, profile, quantity, workers=self.workers)
            measured = fit.slope if fit.slope is not None else float("inf")
            results.append(CriterionResult(
                6, name, measured, threshold, fit.satisfies(threshold),
                detail="suppressed below the numeric floor" if fit.suppressed else "",
                values=fit.to_dict()
            ))
        return results

    def e_mirror_null(self) -> List[CriterionResult]:
        scenario = Scenario.destructive(Blocking.C_ARM)
        ratios = {}
        for profile in (BeamProfile.gaussian(), BeamProfile.rectangular(),
                        BeamProfile.asymmetric_test(skew=ASYMMETRIC_SKEW)):
            grid = Grid.for_profile(profile)
            g = grid.uniform()
            peak_f = float(np.max(evaluate(profile, g.x[np.newaxis, :], g.y[:, np.newaxis])))
            scale = np.sqrt(scenario.source_intensity) / 3.0 * peak_f
            worst = 0.0
            for fraction in (0.01, 0.05, 0.1):
                deflections = MirrorDeflections(delta_E=fraction * profile.width_y)
                field_map = compose_field(profile, grid, deflections, scenario)
                worst = max(worst, float(np.max(np.abs(field_map.values))) / scale)
            ratios[profile.kind.value] = worst
        measured = max(ratios.values())
        return [CriterionResult(
            7, "e_mirror_null", measured, E_NULL_LIMIT, measured <= E_NULL_LIMIT,
            detail="max |E| relative to a single path's peak amplitude, only mirror E deflected",
            values=ratios
        )]

    def oracle_agreement(self) -> List[CriterionResult]:
        """Simulated peaks agree with the linear prediction."""
        worst = 0.0
        values: Dict[str, Any] = {}
        passed = True
        for preset in ("constructive", "destructive", "block-after-f", "block-c-arm"):
            run = self.run(preset)
            predicted = predicted_peak_powers(run.vibrations, run.scenario, run.line_int)
            largest = max(predicted.values())
            for m in MIRRORS:
                measured = run.spectrum.peak_power[m]
                if predicted[m] > 0.0:
                    error = abs(measured / predicted[m] - 1.0)
                    worst = max(worst, error)
                    values[f"{preset}:{m}"] = error
                    passed = passed and error <= RATIO_TOLERANCE
                else:
                    ceiling = max(DETECTABILITY_FACTOR * run.spectrum.noise_floor, GAUSSIAN_SUPPRESSION * largest)
                    values[f"{preset}:{m}"] = "zero" if measured <= ceiling else measured
                    passed = passed and measured <= ceiling
        return [CriterionResult(
            8, "oracle_agreement", worst, RATIO_TOLERANCE, passed,
            detail="nonzero predicted peaks within 1%, zero predictions not observed",
            values=values
        )]

    def negative_control(self) -> List[CriterionResult]:
        """A detuned phi_B must break the E and F suppression."""
        run = self.run("destructive", detuning_B=NEGATIVE_CONTROL_DETUNING)
        suppression = self._suppression(run.spectrum)
        criterion_holds = suppression < GAUSSIAN_SUPPRESSION
        return [CriterionResult(
            9, "negative_control", suppression, GAUSSIAN_SUPPRESSION, not criterion_holds,
            expected_fail=True,
            detail=f"phi_B detuned by {NEGATIVE_CONTROL_DETUNING} rad; E/F suppression must fail",
            values={"suppression_check_passed": criterion_holds}
        )]

    def inner_output_parity(self) -> List[CriterionResult]:
        results = []
        for profile in (BeamProfile.gaussian(), BeamProfile.asymmetric_test(skew=ASYMMETRIC_SKEW)):
            fit = parity_order_fit(profile)
            results.append(CriterionResult(
                10, f"inner_output_parity_{profile.kind.value}",
                fit.slope if fit.slope is not None else float("inf"), 0.0, True,
                gating=False, detail="order of the y-odd intensity part; reported only",
                values=fit.to_dict()
            ))
        return results


def run_acceptance_matrix(store: Optional[PresetStore] = None, workers: Optional[int] = None) -> AcceptanceReport:
    """Evaluate every acceptance criterion; failures become report entries."""
    logger.info("Running acceptance matrix")
    report = AcceptanceMatrix(store, workers).evaluate()
    logger.info(f"Acceptance matrix {'PASSED' if report.all_passed else 'FAILED'}")
    return report
