#!/usr/bin/env python3
"""
Weak-MZI Rejection Module
Input rejection and guarded criterion evaluation

Every operation that refuses its input raises InputRejected carrying a
RejectionReason. Acceptance checks run inside CriterionGuard so that an
exception in one check becomes a failed report entry instead of aborting
the remaining checks.
"""

import logging
import time
from enum import Enum
from typing import Any, Dict, Optional

logger = logging.getLogger("WEAKMZI.Errors")


class RejectionReason(Enum):
    """Reasons an input is rejected."""
    DEFLECTION_BOUND = "deflection_bound"
    GRID_COVERAGE = "grid_coverage"
    GRID_SHAPE = "grid_shape"
    PROFILE_PARAMETERS = "profile_parameters"
    VIBRATION_SET = "vibration_set"
    NYQUIST = "nyquist"
    LENGTH_MISMATCH = "length_mismatch"
    NO_REFERENCE_PEAK = "no_reference_peak"
    UNKNOWN_PARAMETER = "unknown_parameter"
    CONFIG_INVALID = "config_invalid"


class InputRejected(ValueError):
    """Raised when an operation's precondition does not hold."""

    def __init__(
        self,
        reason: RejectionReason,
        message: str,
        key: Optional[str] = None,
        line: Optional[int] = None
    ):
        self.reason = reason
        self.message = message
        self.key = key
        self.line = line
        super().__init__(self._format())

    def _format(self) -> str:
        parts = []
        if self.line is not None:
            parts.append(f"line {self.line}")
        if self.key:
            parts.append(f"key '{self.key}'")
        location = f" ({', '.join(parts)})" if parts else ""
        return f"{self.reason.value}{location}: {self.message}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "reason": self.reason.value,
            "message": self.message,
            "key": self.key,
            "line": self.line
        }


class CriterionGuard:
    """
    Context manager that contains failures of a single acceptance check.

    Usage:
        guard = CriterionGuard("constructive_ratio")
        with guard:
            ... evaluate the check ...
        if guard.failed:
            report a failed entry with guard.error_text
    """

    def __init__(self, name: str):
        self.name = name
        self.error: Optional[BaseException] = None
        self.start_time: Optional[float] = None
        self.elapsed: float = 0.0

    def __enter__(self) -> "CriterionGuard":
        self.start_time = time.time()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> bool:
        self.elapsed = time.time() - (self.start_time or time.time())

        if exc_val is None:
            logger.debug(f"Criterion '{self.name}' evaluated in {self.elapsed:.2f}s")
            return False

        if not isinstance(exc_val, Exception):
            # KeyboardInterrupt and friends propagate
            return False

        self.error = exc_val
        logger.error(f"Criterion '{self.name}' raised {type(exc_val).__name__}: {exc_val}")
        return True

    @property
    def failed(self) -> bool:
        return self.error is not None

    @property
    def error_text(self) -> str:
        if self.error is None:
            return ""
        return f"{type(self.error).__name__}: {self.error}"
