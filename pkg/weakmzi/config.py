#!/usr/bin/env python3
"""
Weak-MZI Configuration
Environment settings, run-config files and the shipped presets

Run configurations are JSON documents validated by the pydantic models in
weakmzi.models.schemas. Diagnostics name the line and, for schema errors,
the dotted key of the first offending entry.
"""

import json
import logging
import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from dotenv import load_dotenv
from pydantic import ValidationError

from weakmzi.errors import InputRejected, RejectionReason
from weakmzi.models.schemas import RunConfig

logger = logging.getLogger("WEAKMZI.Config")

PRESET_DIR = Path(__file__).parent / "presets"
PRESET_NAMES = ("constructive", "destructive", "block-after-f", "block-c-arm")


@dataclass
class Settings:
    """Process-wide settings taken from the environment."""
    log_level: str = "INFO"
    workers: int = 1

    @classmethod
    def from_env(cls) -> "Settings":
        """Read settings from the environment and an optional .env file."""
        load_dotenv()
        level = os.getenv("WEAKMZI_LOG_LEVEL", "INFO").upper()
        try:
            workers = int(os.getenv("WEAKMZI_WORKERS", "1"))
        except ValueError:
            logger.warning("WEAKMZI_WORKERS is not an integer, using 1")
            workers = 1
        return cls(log_level=level, workers=max(1, workers))


def _line_of_key(text: str, loc: Sequence[Union[str, int]]) -> int:
    """
    Line of the key path `loc` in the JSON text.

    Each key is searched after the match of its parent, so vibrations.B.amplitude
    lands on the amplitude inside the B block. A segment that is not in the text
    (a missing required key) leaves the line of the deepest parent found.
    """
    position, line = 0, 1
    for part in loc:
        if not isinstance(part, str):
            continue
        match = re.compile(rf'"{re.escape(part)}"\s*:').search(text, position)
        if match is None:
            break
        position = match.end()
        line = text.count("\n", 0, match.start()) + 1
    return line


def parse_run_config(text: str, source: str = "<config>") -> RunConfig:
    """Parse and validate a JSON run configuration, naming the line of any error."""
    if not text.strip():
        raise InputRejected(RejectionReason.CONFIG_INVALID, f"{source} is empty", line=1)

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputRejected(RejectionReason.CONFIG_INVALID, f"{source}: invalid JSON, {e.msg}", line=e.lineno)

    if not isinstance(data, dict):
        raise InputRejected(RejectionReason.CONFIG_INVALID, f"{source}: top level must be an object", line=1)

    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = first.get("loc", ())
        key = ".".join(str(part) for part in loc) or None
        raise InputRejected(
            RejectionReason.CONFIG_INVALID,
            f"{source}: {first.get('msg', 'invalid value')}",
            key=key,
            line=_line_of_key(text, loc)
        )


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """Read and parse a run configuration file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputRejected(RejectionReason.CONFIG_INVALID, f"cannot read {path}: {e.strerror}")
    config = parse_run_config(text, source=str(path))
    logger.info(f"Loaded run config '{config.name}' from {path}")
    return config


def dump_run_config(config: RunConfig) -> str:
    """Serialize a run configuration back to JSON."""
    return json.dumps(config.model_dump(mode="json"), indent=2) + "\n"


class PresetStore:
    """
    The shipped run presets, loaded lazily from package data.

    A preset whose file is missing or invalid falls back to the built-in
    definition of the same name.
    """

    def __init__(self, preset_dir: Optional[Union[str, Path]] = None):
        self.preset_dir = Path(preset_dir) if preset_dir else PRESET_DIR
        self._cache: Dict[str, RunConfig] = {}

    def names(self) -> List[str]:
        """Names of the shipped presets."""
        return list(PRESET_NAMES)

    def get(self, name: str) -> RunConfig:
        """Get a copy of the named preset."""
        if name not in PRESET_NAMES:
            raise InputRejected(
                RejectionReason.UNKNOWN_PARAMETER,
                f"unknown preset '{name}', expected one of {', '.join(PRESET_NAMES)}"
            )
        if name not in self._cache:
            self._cache[name] = self._load_preset(name)
        # Callers may modify their copy
        return self._cache[name].model_copy(deep=True)

    def reload(self) -> None:
        """Drop cached presets so the next get reads the files again."""
        self._cache.clear()

    def _load_preset(self, name: str) -> RunConfig:
        path = self.preset_dir / f"{name}.json"
        try:
            return parse_run_config(path.read_text(encoding="utf-8"), source=str(path))
        except FileNotFoundError:
            logger.warning(f"Preset file not found: {path}, using built-in definition")
        except InputRejected as e:
            logger.error(f"Preset file invalid: {e}, using built-in definition")
        return RunConfig.model_validate(self._default_preset(name))

    def _default_preset(self, name: str) -> Dict[str, Any]:
        scenarios = {
            "constructive": {"tuning": "constructive", "blocking": "none"},
            "destructive": {"tuning": "destructive", "blocking": "none"},
            "block-after-f": {"tuning": "destructive", "blocking": "after_f"},
            "block-c-arm": {"tuning": "destructive", "blocking": "c_arm"},
        }
        profile = {"kind": "gaussian", "width_x": 1.0, "width_y": 1.0}
        if name == "block-c-arm":
            profile = {"kind": "rectangular", "width_x": 1.0, "width_y": 1.0}
        return {
            "name": name,
            "profile": profile,
            "scenario": scenarios[name],
            "output": {"directory": f"out/{name}"}
        }


_store_instance: Optional[PresetStore] = None


def get_preset_store() -> PresetStore:
    """Get singleton preset store instance."""
    global _store_instance
    if _store_instance is None:
        _store_instance = PresetStore()
    return _store_instance
