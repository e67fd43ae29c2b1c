#!/usr/bin/env python3
"""
Weak-MZI Beam Profiles
Closed-form transverse amplitude profiles and the sampling grid

Conventions:
- Gaussian:      f = N exp(-x^2/wx^2 - y^2/wy^2), N^2 = 2 / (pi wx wy)
- Rectangular:   f = 1/sqrt(w d) for |x| <= w/2 and |y| <= d/2, else 0
- AsymmetricTest: Gaussian times (1 + skew tanh(y/wy)), renormalized

Every profile satisfies the double integral of f^2 equal to 1. Widths are
the 1/e^2 intensity half-widths for the smooth kinds and the full widths
for the rectangular kind.
"""

import functools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Tuple, Union

import numpy as np
from scipy import integrate

from weakmzi.errors import InputRejected, RejectionReason

logger = logging.getLogger("WEAKMZI.Profiles")

ArrayLike = Union[float, np.ndarray]

# Smooth profiles are integrated over +/- this many widths
SMOOTH_SUPPORT_WIDTHS = 8.0


class ProfileKind(Enum):
    """Shapes of the transverse amplitude profile."""
    GAUSSIAN = "gaussian"
    RECTANGULAR = "rectangular"
    ASYMMETRIC_TEST = "asymmetric_test"


def _asymmetric_y_factor(skew: float) -> float:
    """Integral over u of exp(-2u^2)(1 + skew tanh u)^2."""
    value, _ = integrate.quad(
        lambda u: np.exp(-2.0 * u * u) * (1.0 + skew * np.tanh(u)) ** 2,
        -SMOOTH_SUPPORT_WIDTHS, SMOOTH_SUPPORT_WIDTHS,
        epsabs=0.0, epsrel=1e-13, limit=200
    )
    return value


@dataclass(frozen=True)
class BeamProfile:
    """A normalized transverse amplitude profile."""
    kind: ProfileKind
    width_x: float
    width_y: float
    skew: float = 0.0
    norm_constant: float = field(init=False, repr=False)

    def __post_init__(self):
        if not (self.width_x > 0 and self.width_y > 0):
            raise InputRejected(
                RejectionReason.PROFILE_PARAMETERS,
                f"widths must be positive, got width_x={self.width_x}, width_y={self.width_y}"
            )
        if self.kind is ProfileKind.ASYMMETRIC_TEST:
            if not abs(self.skew) < 1.0:
                raise InputRejected(
                    RejectionReason.PROFILE_PARAMETERS,
                    f"skew must satisfy |skew| < 1, got {self.skew}"
                )
        elif self.skew != 0.0:
            raise InputRejected(
                RejectionReason.PROFILE_PARAMETERS,
                f"skew applies to the asymmetric test profile only, got {self.skew}"
            )
        object.__setattr__(self, "norm_constant", self._compute_norm_constant())

    def _compute_norm_constant(self) -> float:
        wx, wy = self.width_x, self.width_y
        if self.kind is ProfileKind.GAUSSIAN:
            return float(np.sqrt(2.0 / (np.pi * wx * wy)))
        if self.kind is ProfileKind.RECTANGULAR:
            return float(1.0 / np.sqrt(wx * wy))
        x_factor = wx * np.sqrt(np.pi / 2.0)
        y_factor = wy * _asymmetric_y_factor(self.skew)
        return float(1.0 / np.sqrt(x_factor * y_factor))

    @classmethod
    def gaussian(cls, width_x: float = 1.0, width_y: float = 1.0) -> "BeamProfile":
        """Normalized Gaussian with 1/e^2 intensity radii width_x and width_y."""
        return cls(ProfileKind.GAUSSIAN, width_x, width_y)

    @classmethod
    def rectangular(cls, width: float = 1.0, depth: float = 1.0) -> "BeamProfile":
        """Uniform amplitude on a width x depth rectangle."""
        return cls(ProfileKind.RECTANGULAR, width, depth)

    @classmethod
    def asymmetric_test(
        cls,
        width_x: float = 1.0,
        width_y: float = 1.0,
        skew: float = 0.3
    ) -> "BeamProfile":
        return cls(ProfileKind.ASYMMETRIC_TEST, width_x, width_y, skew)

    @property
    def is_symmetric(self) -> bool:
        """True when f(x, -y) = f(x, y) holds exactly."""
        return self.kind is not ProfileKind.ASYMMETRIC_TEST or self.skew == 0.0

    @property
    def has_edges(self) -> bool:
        return self.kind is ProfileKind.RECTANGULAR

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "width_x": self.width_x,
            "width_y": self.width_y,
            "skew": self.skew,
            "norm_constant": self.norm_constant
        }


def evaluate(profile: BeamProfile, x: ArrayLike, y: ArrayLike) -> ArrayLike:
    """
    Evaluate f(x, y). Inputs broadcast against each other, so a row of x
    values shaped (1, nx) and a column of y values shaped (ny, 1) give the
    full (ny, nx) sample array. A shifted profile is evaluated by passing
    y - delta.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = profile.norm_constant

    if profile.kind is ProfileKind.RECTANGULAR:
        inside = (np.abs(x) <= profile.width_x / 2.0) & (np.abs(y) <= profile.width_y / 2.0)
        out = np.where(inside, n, 0.0)
    else:
        out = n * np.exp(-(x / profile.width_x) ** 2) * np.exp(-(y / profile.width_y) ** 2)
        if profile.kind is ProfileKind.ASYMMETRIC_TEST:
            out = out * (1.0 + profile.skew * np.tanh(y / profile.width_y))

    return out if out.ndim else float(out)


def breakpoints_x(profile: BeamProfile) -> Tuple[float, ...]:
    if profile.kind is ProfileKind.RECTANGULAR:
        return (-profile.width_x / 2.0, profile.width_x / 2.0)
    return ()


def breakpoints_y(profile: BeamProfile) -> Tuple[float, ...]:
    """Edges of the profile along y, empty for smooth profiles."""
    if profile.kind is ProfileKind.RECTANGULAR:
        return (-profile.width_y / 2.0, profile.width_y / 2.0)
    return ()


def _midpoint_line_integral(profile: BeamProfile, lo: float, hi: float, cells: int) -> float:
    dx = (hi - lo) / cells
    x = lo + (np.arange(cells) + 0.5) * dx
    return float(np.sum(evaluate(profile, x, 0.0) ** 2) * dx)


def line_integral_f2(profile: BeamProfile, tolerance: float = 1e-12) -> float:
    """
    Integral of f(x, 0)^2 along x.

    Midpoint rule with cell doubling until two successive estimates agree
    to the tolerance, followed by one Richardson step. The rectangular
    profile is integrated over its support, where the rule is exact.
    """
    if profile.kind is ProfileKind.RECTANGULAR:
        half = profile.width_x / 2.0
        return _midpoint_line_integral(profile, -half, half, 64)

    half = SMOOTH_SUPPORT_WIDTHS * profile.width_x
    cells = 64
    previous = _midpoint_line_integral(profile, -half, half, cells)
    for _ in range(20):
        cells *= 2
        current = _midpoint_line_integral(profile, -half, half, cells)
        if abs(current - previous) <= tolerance * abs(current):
            return current + (current - previous) / 3.0
        previous = current

    logger.warning(f"Line integral did not reach tolerance {tolerance} for {profile.kind.value}")
    return previous


@dataclass(frozen=True, eq=False)
class RefinedGrid:
    """Cell-centred nodes with their cell widths; may be non-uniform."""
    x: np.ndarray
    wx: np.ndarray
    y: np.ndarray
    wy: np.ndarray

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.y.size, self.x.size)

    @property
    def is_y_symmetric(self) -> bool:
        return bool(np.array_equal(self.y, -self.y[::-1]) and np.array_equal(self.wy, self.wy[::-1]))

    @property
    def cell_areas(self) -> np.ndarray:
        return self.wy[:, np.newaxis] * self.wx[np.newaxis, :]


def _symmetric_edges(count: int, extent: float) -> np.ndarray:
    """Edges of `count` equal cells on [-extent, extent], exactly mirror symmetric."""
    step = 2.0 * extent / count
    if count % 2 == 0:
        half = np.arange(count // 2 + 1) * step
        return np.concatenate([-half[::-1], half[1:]])
    half = (np.arange(count // 2 + 1) + 0.5) * step
    return np.concatenate([-half[::-1], half])


def _merge_edges(edges: np.ndarray, breaks: Sequence[float]) -> np.ndarray:
    inner = [b for b in breaks if edges[0] < b < edges[-1]]
    if not inner:
        return edges
    return np.unique(np.concatenate([edges, np.asarray(inner, dtype=float)]))


@dataclass(frozen=True)
class Grid:
    """
    Uniform cell-centred sampling rectangle [-extent_x, extent_x] x
    [-extent_y, extent_y]. ny must be even so that y = 0 is a cell edge
    and no sample lies on the axis.
    """
    nx: int = 32
    ny: int = 500
    extent_x: float = 5.0
    extent_y: float = 5.0

    def __post_init__(self):
        if self.nx < 1 or self.ny < 2:
            raise InputRejected(RejectionReason.GRID_SHAPE, f"grid too small: nx={self.nx}, ny={self.ny}")
        if self.ny % 2:
            raise InputRejected(RejectionReason.GRID_SHAPE, f"ny must be even, got {self.ny}")
        if not (self.extent_x > 0 and self.extent_y > 0):
            raise InputRejected(RejectionReason.GRID_SHAPE, "grid extents must be positive")

    @classmethod
    def for_profile(cls, profile: BeamProfile, nx: int = 32, ny: int = 500, widths: float = 5.0) -> "Grid":
        """Grid spanning `widths` beam widths on each side."""
        return cls(nx, ny, widths * profile.width_x, widths * profile.width_y)

    @property
    def dx(self) -> float:
        return 2.0 * self.extent_x / self.nx

    @property
    def dy(self) -> float:
        return 2.0 * self.extent_y / self.ny

    @property
    def x_edges(self) -> np.ndarray:
        return _symmetric_edges(self.nx, self.extent_x)

    @property
    def y_edges(self) -> np.ndarray:
        return _symmetric_edges(self.ny, self.extent_y)

    def uniform(self) -> RefinedGrid:
        return _uniform_grid(self)

    def refined(self, x_breaks: Sequence[float] = (), y_breaks: Sequence[float] = ()) -> RefinedGrid:
        """Insert breakpoints as extra cell edges."""
        if not x_breaks and not y_breaks:
            return self.uniform()
        return _grid_from_edges(
            _merge_edges(self.x_edges, x_breaks),
            _merge_edges(self.y_edges, y_breaks)
        )

    def halved(self) -> "Grid":
        """Same extent, twice the sample density in both directions."""
        return Grid(2 * self.nx, 2 * self.ny, self.extent_x, self.extent_y)

    def to_dict(self) -> dict:
        return {"nx": self.nx, "ny": self.ny, "extent_x": self.extent_x, "extent_y": self.extent_y}


def _grid_from_edges(x_edges: np.ndarray, y_edges: np.ndarray) -> RefinedGrid:
    return RefinedGrid(
        x=0.5 * (x_edges[:-1] + x_edges[1:]),
        wx=np.diff(x_edges),
        y=0.5 * (y_edges[:-1] + y_edges[1:]),
        wy=np.diff(y_edges)
    )


@functools.lru_cache(maxsize=32)
def _uniform_grid(grid: Grid) -> RefinedGrid:
    return _grid_from_edges(grid.x_edges, grid.y_edges)


def sampling_grid(profile: BeamProfile, grid: Grid, y_shifts: Sequence[float] = (0.0,)) -> RefinedGrid:
    """
    Grid on which a sum of profile copies shifted by y_shifts is integrated.
    Profiles with edges get every edge of every copy as a cell edge, so each
    cell lies entirely inside or outside each copy.
    """
    if not profile.has_edges:
        return grid.uniform()
    y_breaks = [s + b for s in y_shifts for b in breakpoints_y(profile)]
    return grid.refined(breakpoints_x(profile), y_breaks)


def normalization_error(profile: BeamProfile, grid: Grid) -> float:
    """|integral of f^2 - 1| by midpoint quadrature on the grid."""
    g = sampling_grid(profile, grid)
    f = evaluate(profile, g.x[np.newaxis, :], g.y[:, np.newaxis])
    return float(abs(np.sum(f * f * g.cell_areas) - 1.0))
