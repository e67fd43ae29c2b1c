#!/usr/bin/env python3
"""
Weak-MZI Configuration Tests
Run-config parsing, diagnostics, presets and environment settings
"""

import json
import logging
import pytest
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from weakmzi.config import (
    PRESET_NAMES,
    PresetStore,
    Settings,
    dump_run_config,
    load_run_config,
    parse_run_config,
)
from weakmzi.errors import InputRejected, RejectionReason
from weakmzi.interferometer import Blocking, Tuning
from weakmzi.models.schemas import RunConfig
from weakmzi.profiles import ProfileKind

INVALID_JSON = """{
  "name": "broken",
  oops
}"""

UNKNOWN_KEY = """{
  "name": "typo",
  "grid": {
    "nx": 16,
    "nyy": 100
  }
}"""

ODD_NY = """{
  "name": "odd",
  "grid": {
    "nx": 16,
    "ny": 101
  }
}"""

CUSTOM_WITHOUT_PHASES = """{
  "name": "custom",
  "scenario": {
    "tuning": "custom"
  }
}"""

BAD_MIRROR_B = """{
  "name": "drive",
  "vibrations": {
    "C": {"amplitude": 0.001, "frequency": 23},
    "E": {"amplitude": 0.001, "frequency": 29},
    "A": {"amplitude": 0.001, "frequency": 31},
    "B": {
      "frequency": 37,
      "amplitude": -1.0
    },
    "F": {"amplitude": 0.001, "frequency": 41}
  }
}"""


class TestParseRunConfig:
    """Tests for run-config parsing and diagnostics."""

    def test_minimal_config_takes_defaults(self):
        """Test that a config with only a name builds the default run."""
        config = parse_run_config('{"name": "minimal"}')
        profile, grid, vib, scenario, ts = config.build()
        assert profile.kind is ProfileKind.GAUSSIAN
        assert (grid.nx, grid.ny) == (32, 500)
        assert vib.C.frequency == 23.0
        assert scenario.tuning is Tuning.CONSTRUCTIVE
        assert ts.n_samples == 4096

    def test_empty_input_rejected_at_line_one(self):
        """Test that blank input is rejected at line 1."""
        with pytest.raises(InputRejected) as info:
            parse_run_config("   \n")
        assert info.value.reason is RejectionReason.CONFIG_INVALID
        assert info.value.line == 1

    def test_invalid_json_names_line(self):
        """Test that a JSON syntax error names its line."""
        with pytest.raises(InputRejected) as info:
            parse_run_config(INVALID_JSON)
        assert info.value.line == 3

    def test_top_level_must_be_object(self):
        """Test that the document must be a JSON object."""
        with pytest.raises(InputRejected):
            parse_run_config("[1, 2, 3]")

    def test_unknown_key_named_with_line(self):
        """Test that a misspelled key is named with its line."""
        with pytest.raises(InputRejected) as info:
            parse_run_config(UNKNOWN_KEY)
        assert info.value.key == "grid.nyy"
        assert info.value.line == 5
        assert "line 5" in str(info.value)

    def test_odd_ny_rejected(self):
        """Test that an odd ny is rejected at its line."""
        with pytest.raises(InputRejected) as info:
            parse_run_config(ODD_NY)
        assert info.value.key == "grid.ny"
        assert info.value.line == 5

    def test_nested_key_located_inside_its_parent(self):
        """Test that a bad mirror B amplitude points at the B block, not the first amplitude."""
        with pytest.raises(InputRejected) as info:
            parse_run_config(BAD_MIRROR_B)
        assert info.value.key == "vibrations.B.amplitude"
        assert info.value.line == 9

    def test_custom_tuning_needs_phases(self):
        """Test that custom tuning without phases points at the scenario."""
        with pytest.raises(InputRejected) as info:
            parse_run_config(CUSTOM_WITHOUT_PHASES)
        assert info.value.key == "scenario"
        assert info.value.line == 3

    def test_missing_name_rejected(self):
        """Test that the run name is required."""
        with pytest.raises(InputRejected) as info:
            parse_run_config('{"grid": {"ny": 100}}')
        assert info.value.key == "name"

    def test_skew_requires_asymmetric_kind(self):
        """Test that skew is refused on a Gaussian profile."""
        with pytest.raises(InputRejected):
            parse_run_config('{"name": "s", "profile": {"kind": "gaussian", "skew": 0.2}}')

    def test_custom_phases_reach_scenario(self):
        """Test that custom phases and blocking reach the scenario."""
        config = parse_run_config(json.dumps({
            "name": "custom",
            "scenario": {"tuning": "custom", "blocking": "after_f",
                         "phases": {"phi_A": 0.1, "phi_B": 0.2, "phi_C": 0.3}}
        }))
        scenario = config.build()[3]
        assert scenario.blocking is Blocking.AFTER_MIRROR_F
        assert scenario.phases.phi_C == 0.3

    def test_grid_extent_in_widths(self):
        """Test that grid extents are measured in profile widths."""
        config = parse_run_config(json.dumps({
            "name": "wide",
            "profile": {"kind": "rectangular", "width_x": 2.0, "width_y": 0.5},
            "grid": {"extent_x": 4.0, "extent_y": 6.0}
        }))
        grid = config.build()[1]
        assert (grid.extent_x, grid.extent_y) == (8.0, 3.0)

    def test_dump_parse_is_identity(self):
        """Test that dumping and parsing returns the same config."""
        config = parse_run_config('{"name": "round", "scenario": {"tuning": "destructive"}}')
        assert parse_run_config(dump_run_config(config)) == config

    def test_load_missing_file(self, tmp_path):
        """Test that a missing file is a config error."""
        with pytest.raises(InputRejected) as info:
            load_run_config(tmp_path / "absent.json")
        assert info.value.reason is RejectionReason.CONFIG_INVALID

    def test_load_from_file(self, tmp_path):
        """Test loading a config from disk."""
        path = tmp_path / "run.json"
        path.write_text('{"name": "from-file"}')
        assert load_run_config(path).name == "from-file"


class TestPresetStore:
    """Tests for the shipped presets."""

    @pytest.mark.parametrize("name", PRESET_NAMES)
    def test_shipped_presets_load(self, name):
        """Test that every shipped preset loads and builds."""
        config = PresetStore().get(name)
        assert config.name == name
        config.build()

    def test_preset_semantics(self):
        """Test the tuning, blocking and profile of the shipped presets."""
        store = PresetStore()
        assert store.get("constructive").scenario.to_scenario().tuning is Tuning.CONSTRUCTIVE
        assert store.get("block-after-f").scenario.to_scenario().blocking is Blocking.AFTER_MIRROR_F
        c_arm = store.get("block-c-arm")
        assert c_arm.profile.to_profile().kind is ProfileKind.RECTANGULAR
        assert c_arm.scenario.to_scenario().blocking is Blocking.C_ARM

    def test_unknown_preset_rejected(self):
        """Test that an unknown preset name is rejected."""
        with pytest.raises(InputRejected) as info:
            PresetStore().get("sideways")
        assert info.value.reason is RejectionReason.UNKNOWN_PARAMETER

    def test_names_match_shipped_presets(self):
        """Test that the store lists every shipped preset."""
        assert PresetStore().names() == list(PRESET_NAMES)

    def test_get_returns_a_copy(self):
        """Test that changing a returned preset leaves the cache alone."""
        store = PresetStore()
        first = store.get("destructive")
        first.scenario.detuning_B = 0.5
        assert store.get("destructive").scenario.detuning_B == 0.0

    def test_missing_file_falls_back(self, tmp_path, caplog):
        """Test that a missing preset file falls back to the built-in definition."""
        with caplog.at_level(logging.WARNING, logger="WEAKMZI.Config"):
            config = PresetStore(tmp_path).get("block-c-arm")
        assert "not found" in caplog.text
        assert config == PresetStore().get("block-c-arm").model_copy(
            update={"description": config.description})

    def test_invalid_file_falls_back(self, tmp_path, caplog):
        """Test that an invalid preset file falls back to the built-in definition."""
        (tmp_path / "destructive.json").write_text("{ not json")
        with caplog.at_level(logging.ERROR, logger="WEAKMZI.Config"):
            config = PresetStore(tmp_path).get("destructive")
        assert "invalid" in caplog.text
        assert config.scenario.tuning.value == "destructive"

    def test_reload_clears_cache(self, tmp_path):
        """Test that reload picks up edited preset files."""
        store = PresetStore(tmp_path)
        store.get("constructive")
        (tmp_path / "constructive.json").write_text('{"name": "constructive", "description": "edited"}')
        assert store.get("constructive").description == ""
        store.reload()
        assert store.get("constructive").description == "edited"


class TestSettings:
    """Tests for environment settings."""

    def test_values_from_environment(self, monkeypatch):
        """Test reading the log level and workers from the environment."""
        monkeypatch.setenv("WEAKMZI_LOG_LEVEL", "debug")
        monkeypatch.setenv("WEAKMZI_WORKERS", "4")
        settings = Settings.from_env()
        assert settings.log_level == "DEBUG"
        assert settings.workers == 4

    def test_invalid_workers_fall_back(self, monkeypatch):
        """Test that a non-integer worker count falls back to 1."""
        monkeypatch.setenv("WEAKMZI_WORKERS", "many")
        assert Settings.from_env().workers == 1

    def test_workers_at_least_one(self, monkeypatch):
        """Test that the worker count is at least 1."""
        monkeypatch.setenv("WEAKMZI_WORKERS", "0")
        assert Settings.from_env().workers == 1


class TestRunConfigModel:
    """Tests for the pydantic model itself."""

    def test_vibrations_follow_profile_width(self):
        """Test that default amplitudes scale with width_y."""
        config = RunConfig.model_validate({"name": "w", "profile": {"width_y": 2.0}})
        assert config.vibrations.A.amplitude == pytest.approx(2e-3)

    def test_extra_top_level_key_rejected(self):
        """Test that unknown top-level keys are rejected."""
        with pytest.raises(Exception):
            RunConfig.model_validate({"name": "x", "colour": "blue"})


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
