#!/usr/bin/env python3
"""
Weak-MZI Command Line
simulate / verify / sweep / profile

Exit codes: 0 success, 1 acceptance criterion failed, 2 usage or
configuration error.
"""

import argparse
import csv
import json
import logging
import math
import re
import sys
from pathlib import Path
from typing import Dict, Optional, Sequence

from weakmzi.config import Settings, get_preset_store, load_run_config
from weakmzi.errors import InputRejected, RejectionReason
from weakmzi.interferometer import MIRRORS, CutPlane, MirrorDeflections, transverse_cut
from weakmzi.models.schemas import PhaseSpec, ProfileKindName, RunConfig, TuningName
from weakmzi.dynamics import simulate_run
from weakmzi.spectrum import power_spectrum
from weakmzi.verification import run_acceptance_matrix

logger = logging.getLogger("WEAKMZI.CLI")

EXIT_OK = 0
EXIT_CRITERION_FAILED = 1
EXIT_USAGE = 2

SWEEP_PARAMETERS = ("amplitude_scale", "skew", "phase_b")

BANNER = "═══════════════════════════════════════════════════════════════"


def _fmt(value: float) -> str:
    # 17 significant digits round-trip every double
    return f"{float(value):.16e}"


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    """Run config from exactly one of --config and --preset."""
    if args.config and args.preset:
        raise InputRejected(RejectionReason.CONFIG_INVALID, "give either --config or --preset, not both")
    if args.config:
        return load_run_config(args.config)
    if args.preset:
        return get_preset_store().get(args.preset)
    raise InputRejected(RejectionReason.CONFIG_INVALID, "a run needs --config <path> or --preset <name>")


def _output_dir(args: argparse.Namespace, config: RunConfig) -> Path:
    out = Path(args.out or config.output.directory)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_simulate(args: argparse.Namespace) -> int:
    """Simulate one run and write the time-series and spectrum CSV files."""
    config = _resolve_config(args)
    profile, grid, vib, scenario, ts = config.build()
    series = simulate_run(profile, grid, vib, scenario, ts, args.workers)
    report = power_spectrum(series)

    out = _output_dir(args, config)
    series_path = out / config.output.time_series_csv
    spectrum_path = out / config.output.spectrum_csv

    with open(series_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["sample_index", "t", "D", "upper_power", "lower_power"])
        for k in range(len(series)):
            writer.writerow([
                k, _fmt(series.times[k]), _fmt(series.D[k]),
                _fmt(series.upper_power[k]), _fmt(series.lower_power[k])
            ])

    with open(spectrum_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["bin_index", "frequency", "power", "is_mirror_peak", "mirror_label"])
        for k, (freq, power) in enumerate(zip(report.frequencies, report.bin_powers)):
            mirror = report.mirror_at(k)
            writer.writerow([k, _fmt(freq), _fmt(power), "true" if mirror else "false", mirror or ""])

    logger.info(f"Wrote {series_path} and {spectrum_path}")
    print(f"Run '{config.name}': {len(series)} samples")
    for m in MIRRORS:
        print(f"  {m}: peak power {report.peak_power[m]:.6e}")
    print(f"  noise floor {report.noise_floor:.3e}, DC {report.dc_power:.3e}")
    print(f"Time series: {series_path}")
    print(f"Spectrum:    {spectrum_path}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the acceptance matrix and write acceptance_report.json."""
    report = run_acceptance_matrix(workers=args.workers)

    out = Path(args.out or "out")
    out.mkdir(parents=True, exist_ok=True)
    report_path = out / "acceptance_report.json"
    with open(report_path, "w") as f:
        json.dump(report.to_dict(), f, indent=2, default=str)

    for r in report.results:
        status = '✅ PASSED' if r.passed else '❌ FAILED'
        if r.expected_fail:
            status += " (expected fail)"
        if not r.gating:
            status = "ℹ️  REPORTED"
        print(f"Criterion {r.id} - {r.name}: {status}")
        print(f"  measured {r.measured:.6g}, threshold {r.threshold:g}")
        if r.detail:
            print(f"  {r.detail}")

    print()
    print(f"Report: {report_path}")
    print(f"Overall: {'✅ ALL CRITERIA PASSED' if report.all_passed else '❌ CRITERIA FAILED'}")
    return EXIT_OK if report.all_passed else EXIT_CRITERION_FAILED


_PI_TERM = re.compile(r"^\s*([-+]?[0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$")


def parse_value(token: str) -> float:
    """A float, or a multiple of pi such as 'pi', '2pi', 'pi/2', '-0.5*pi'."""
    token = token.strip()
    match = _PI_TERM.match(token)
    try:
        if not match:
            return float(token)
        factor = match.group(1)
        factor_value = {"": 1.0, "+": 1.0, "-": -1.0}.get(factor)
        if factor_value is None:
            factor_value = float(factor)
        divisor = float(match.group(2)) if match.group(2) else 1.0
        return factor_value * math.pi / divisor
    except (ValueError, ZeroDivisionError):
        raise InputRejected(RejectionReason.UNKNOWN_PARAMETER, f"cannot parse sweep value '{token}'")


def _apply_sweep_value(config: RunConfig, parameter: str, value: float) -> RunConfig:
    """Copy of the config with one sweep value applied, validated again."""
    swept = config.model_copy(deep=True)
    if parameter == "amplitude_scale":
        for m in MIRRORS:
            getattr(swept.vibrations, m).amplitude *= value
    elif parameter == "skew":
        swept.profile.kind = ProfileKindName.ASYMMETRIC_TEST
        swept.profile.skew = value
    elif parameter == "phase_b":
        base = swept.scenario.phases or PhaseSpec()
        swept.scenario.tuning = TuningName.CUSTOM
        swept.scenario.phases = PhaseSpec(phi_A=base.phi_A, phi_B=value, phi_C=base.phi_C)
    else:
        raise InputRejected(
            RejectionReason.UNKNOWN_PARAMETER,
            f"unknown sweep parameter '{parameter}', expected one of {', '.join(SWEEP_PARAMETERS)}"
        )
    # Re-run validation on the modified document
    return RunConfig.model_validate(swept.model_dump(mode="json"))


def cmd_sweep(args: argparse.Namespace) -> int:
    """Simulate one run per value of the swept parameter and write sweep.csv."""
    if args.parameter not in SWEEP_PARAMETERS:
        raise InputRejected(
            RejectionReason.UNKNOWN_PARAMETER,
            f"unknown sweep parameter '{args.parameter}', expected one of {', '.join(SWEEP_PARAMETERS)}"
        )
    config = _resolve_config(args)
    values = [parse_value(v) for v in args.values.split(",") if v.strip()]
    if not values:
        raise InputRejected(RejectionReason.CONFIG_INVALID, "--values needs at least one value")

    rows = []
    for value in values:
        swept = _apply_sweep_value(config, args.parameter, value)
        profile, grid, vib, scenario, ts = swept.build()
        report = power_spectrum(simulate_run(profile, grid, vib, scenario, ts, args.workers))
        rows.append([args.parameter, _fmt(value)]
                    + [_fmt(report.peak_power[m]) for m in MIRRORS]
                    + [_fmt(report.dc_power)])
        logger.info(f"Sweep {args.parameter}={value:g} done")

    out = _output_dir(args, config)
    sweep_path = out / config.output.sweep_csv
    with open(sweep_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["parameter", "value"] + [f"power_{m}" for m in MIRRORS] + ["dc_power"])
        writer.writerows(rows)

    print(f"Sweep of {args.parameter} over {len(values)} values: {sweep_path}")
    return EXIT_OK


def parse_deflections(text: str) -> MirrorDeflections:
    """Deflections from 'C=0.05,A=-0.02'; mirrors left out stay at zero."""
    values: Dict[str, float] = {}
    for item in text.split(","):
        if not item.strip():
            continue
        label, sep, value = item.partition("=")
        label = label.strip()
        if not sep or label not in MIRRORS:
            raise InputRejected(
                RejectionReason.UNKNOWN_PARAMETER,
                f"cannot parse deflection '{item.strip()}', expected <mirror>=<value> with mirror in {''.join(MIRRORS)}"
            )
        values[label] = parse_value(value)
    return MirrorDeflections.from_mapping(values)


def cmd_profile(args: argparse.Namespace) -> int:
    """Write the field along x = 0 in front of mirror F and at the detector for fixed deflections."""
    config = _resolve_config(args)
    profile, grid, _, scenario, _ = config.build()
    deflections = parse_deflections(args.deflections)

    cuts = [transverse_cut(profile, grid, deflections, scenario, plane) for plane in CutPlane]

    out = _output_dir(args, config)
    profile_path = out / config.output.profile_csv
    with open(profile_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["plane", "y", "re", "im", "abs", "intensity", "even_intensity", "odd_intensity"])
        for cut in cuts:
            even, odd = cut.even_intensity, cut.odd_intensity
            for k, (y, value) in enumerate(zip(cut.y, cut.values)):
                writer.writerow([
                    cut.plane.value, _fmt(y), _fmt(value.real), _fmt(value.imag), _fmt(abs(value)),
                    _fmt(cut.intensity[k]), _fmt(even[k]), _fmt(odd[k])
                ])

    logger.info(f"Wrote {profile_path}")
    print(f"Run '{config.name}': transverse profiles for {deflections.as_dict()}")
    print(f"Profile: {profile_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakmzi",
        description="Nested Mach-Zehnder interferometer weak-measurement simulator"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, help="Run configuration file (JSON)")
    common.add_argument("--preset", type=str, choices=get_preset_store().names(), help="Shipped preset name")
    common.add_argument("--out", type=str, help="Output directory")
    common.add_argument("--log-level", type=str, default=None,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="Logging level (default from WEAKMZI_LOG_LEVEL or INFO)")
    common.add_argument("--workers", type=int, default=None,
                        help="Threads for sample-parallel runs (default from WEAKMZI_WORKERS or 1)")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("simulate", parents=[common], help="Simulate one run and write CSV files")
    sub.add_parser("verify", parents=[common], help="Run the acceptance criteria")
    sweep = sub.add_parser("sweep", parents=[common], help="Sweep one parameter and write a CSV")
    sweep.add_argument("--parameter", type=str, required=True,
                       help=f"One of {', '.join(SWEEP_PARAMETERS)}")
    sweep.add_argument("--values", type=str, required=True,
                       help="Comma-separated values; multiples of pi allowed (pi/2, 2pi)")
    profile = sub.add_parser("profile", parents=[common], help="Write transverse field profiles to a CSV")
    profile.add_argument("--deflections", type=str, default="",
                         help="Mirror deflections, e.g. C=0.05,A=-0.02; omitted mirrors stay at zero")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for CLI usage"""
    parser = build_parser()
    args = parser.parse_args(argv)

    settings = Settings.from_env()
    logging.basicConfig(
        level=getattr(logging, args.log_level or settings.log_level, logging.INFO),
        format='%(asctime)s - WEAKMZI - %(levelname)s - %(message)s'
    )
    if args.workers is None:
        args.workers = settings.workers

    print(BANNER)
    print("   Weak-MZI")
    print("   Nested interferometer weak-measurement simulator")
    print(BANNER)
    print()

    commands = {
        "simulate": cmd_simulate,
        "verify": cmd_verify,
        "sweep": cmd_sweep,
        "profile": cmd_profile
    }
    try:
        return commands[args.command](args)
    except InputRejected as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"Cannot write output: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
