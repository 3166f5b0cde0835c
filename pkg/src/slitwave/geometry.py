"""Grating geometry, beam parameters, grids, and the boundary wave function.

The boundary (aperture) wave function is the piecewise-constant field
that is ``1/sqrt(total slit width)`` inside the open slits and zero
elsewhere, normalized so its squared modulus integrates to one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    GridCoverageError,
    GridTooCoarseError,
    OverlappingSlitsError,
    SlitwaveError,
)
from .units import HBAR

__all__ = [
    "Grid1D",
    "SlitInterval",
    "ApertureSpec",
    "BeamParams",
    "ComplexField",
    "double_slit",
    "build_aperture_function",
    "slit_index_at",
    "aperture_grid",
    "paper_beam",
    "paper_aperture",
]


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1-D grid: points are ``start + i*step`` for ``i in [0, count)``."""

    start: float
    step: float
    count: int

    def __post_init__(self):
        if self.step <= 0:
            raise SlitwaveError(f"grid step must be positive, got {self.step}")
        if self.count < 2:
            raise SlitwaveError(f"grid needs at least 2 points, got {self.count}")

    @classmethod
    def from_bounds(cls, lo: float, hi: float, count: int) -> "Grid1D":
        if hi <= lo:
            raise SlitwaveError(f"empty grid bounds [{lo}, {hi}]")
        return cls(lo, (hi - lo) / (count - 1), count)

    @property
    def stop(self) -> float:
        return self.start + (self.count - 1) * self.step

    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    def span(self) -> tuple[float, float]:
        return self.start, self.stop


@dataclass(frozen=True)
class SlitInterval:
    """One open slit, ``[x_left, x_right]`` along the grating line (meters)."""

    x_left: float
    x_right: float

    def __post_init__(self):
        if not self.x_left < self.x_right:
            raise SlitwaveError(f"slit needs x_left < x_right, got "
                                f"[{self.x_left}, {self.x_right}]")

    @property
    def width(self) -> float:
        return self.x_right - self.x_left

    @property
    def center(self) -> float:
        return 0.5 * (self.x_left + self.x_right)

    def contains(self, x: float) -> bool:
        # Boundary points belong to the slit.
        return self.x_left <= x <= self.x_right


@dataclass(frozen=True)
class ApertureSpec:
    """An ordered set of disjoint slits defining the open region of the grating."""

    slits: tuple[SlitInterval, ...]

    def __post_init__(self):
        if not self.slits:
            raise SlitwaveError("aperture needs at least one slit")
        slits = tuple(self.slits)
        object.__setattr__(self, "slits", slits)
        for a, b in zip(slits, slits[1:]):
            if b.x_left <= a.x_right:
                raise OverlappingSlitsError(
                    f"slits must be disjoint and ascending: "
                    f"[{a.x_left}, {a.x_right}] then [{b.x_left}, {b.x_right}]")

    @classmethod
    def from_edges(cls, edges) -> "ApertureSpec":
        return cls(tuple(SlitInterval(float(l), float(r)) for l, r in edges))

    @property
    def n_slits(self) -> int:
        return len(self.slits)

    @property
    def total_width(self) -> float:
        return sum(s.width for s in self.slits)

    @property
    def extent(self) -> tuple[float, float]:
        """Outermost edges (left edge of first slit, right edge of last)."""
        return self.slits[0].x_left, self.slits[-1].x_right

    @property
    def span_width(self) -> float:
        lo, hi = self.extent
        return hi - lo

    @property
    def min_width(self) -> float:
        return min(s.width for s in self.slits)

    def widths(self) -> np.ndarray:
        return np.array([s.width for s in self.slits])

    def boundary_value(self) -> float:
        """Constant amplitude inside the open region, ``1/sqrt(total width)``."""
        return 1.0 / math.sqrt(self.total_width)

    def passing_mask(self, diameter: float) -> tuple[bool, ...]:
        """Which slits a particle of the given diameter can pass (width > D)."""
        return tuple(s.width > diameter for s in self.slits)


def double_slit(delta1: float, delta2: float, separation: float) -> ApertureSpec:
    """Canonical asymmetric double slit.

    Slit 1 of width ``delta1`` is centered at ``-separation/2`` and slit 2
    of width ``delta2`` at ``+separation/2``.
    """
    if delta1 <= 0 or delta2 <= 0:
        raise SlitwaveError("slit widths must be positive")
    if separation <= (delta1 + delta2) / 2:
        raise OverlappingSlitsError(
            f"slits overlap: separation {separation} <= (delta1+delta2)/2")
    return ApertureSpec((
        SlitInterval((-separation - delta1) / 2, (-separation + delta1) / 2),
        SlitInterval((separation - delta2) / 2, (separation + delta2) / 2),
    ))


@dataclass(frozen=True)
class BeamParams:
    """Longitudinal beam parameters and the particle diameter.

    ``k`` is the longitudinal wavenumber (1/m), ``mass`` the particle
    mass (kg) and ``diameter`` the particle size (m) used by the
    blocked-slit arrival density.  Wavelength, velocity and angular
    frequency are derived, never stored.
    """

    k: float
    mass: float
    diameter: float = 0.0

    def __post_init__(self):
        if self.k <= 0:
            raise SlitwaveError(f"wavenumber must be positive, got {self.k}")
        if self.mass <= 0:
            raise SlitwaveError(f"mass must be positive, got {self.mass}")
        if self.diameter < 0:
            raise SlitwaveError(f"diameter must be >= 0, got {self.diameter}")

    @property
    def wavelength(self) -> float:
        return 2.0 * math.pi / self.k

    @property
    def velocity(self) -> float:
        return HBAR * self.k / self.mass

    @property
    def omega(self) -> float:
        return HBAR * self.k ** 2 / (2.0 * self.mass)

    def time_at(self, y: float) -> float:
        """Flight time to the plane at distance ``y`` (classical y = v t)."""
        return y / self.velocity

    def plane_at(self, t: float) -> float:
        return self.velocity * t


def paper_beam(diameter: float = 0.0) -> BeamParams:
    """Beam used throughout the reference figures: k = 4*pi*1e10 1/m, m = 3.8189e-26 kg."""
    return BeamParams(k=4.0e10 * math.pi, mass=3.8189e-26, diameter=diameter)


def paper_aperture() -> ApertureSpec:
    """Reference grating: widths 1 um and 0.25 um, centers 8 um apart."""
    return double_slit(1e-6, 0.25e-6, 8e-6)


@dataclass(frozen=True)
class ComplexField:
    """A sampled complex wave function on a transverse grid at fixed y.

    The carried factors exp(iky) and exp(-i omega t) are never sampled;
    every propagator returns the reduced field so that methods are
    directly comparable.  ``provenance`` names the generating method.
    """

    grid: Grid1D
    values: np.ndarray
    y_plane: float
    provenance: str
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != (self.grid.count,):
            raise SlitwaveError(f"field shape {values.shape} does not match grid "
                                f"count {self.grid.count}")
        object.__setattr__(self, "values", values)

    def intensity(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def mass(self) -> float:
        """Trapezoid quadrature of |field|^2 over the grid."""
        return float(np.trapezoid(self.intensity(), dx=self.grid.step))


def slit_index_at(aperture: ApertureSpec, x: float):
    """Index of the slit containing ``x``; None in gaps or outside.

    Edge points count as inside their slit.
    """
    for i, s in enumerate(aperture.slits):
        if s.contains(x):
            return i
    return None


def build_aperture_function(aperture: ApertureSpec, grid: Grid1D,
                            min_samples_per_slit: int = 16) -> ComplexField:
    """Sample the boundary wave function on the grid.

    A sample takes the constant value ``1/sqrt(total width)`` when its
    point lies inside a slit (edges included) and zero otherwise.  The
    grid must cover all slits and resolve the narrowest one with at
    least ``min_samples_per_slit`` samples.  Grids aligned so that slit
    edges fall on cell boundaries (see :func:`aperture_grid`) rasterize
    exactly and carry unit mass under trapezoid quadrature.
    """
    lo, hi = aperture.extent
    if grid.start > lo or grid.stop < hi:
        raise GridCoverageError(
            f"grid [{grid.start}, {grid.stop}] does not cover aperture [{lo}, {hi}]")
    if aperture.min_width / grid.step < min_samples_per_slit:
        raise GridTooCoarseError(
            f"narrowest slit ({aperture.min_width} m) gets "
            f"{aperture.min_width / grid.step:.1f} samples, "
            f"need >= {min_samples_per_slit}")

    x = grid.points()
    values = np.zeros(grid.count, dtype=np.complex128)
    const = aperture.boundary_value()
    eps = 1e-9 * grid.step  # tolerate rounding when edges sit on grid points
    for s in aperture.slits:
        inside = (x >= s.x_left - eps) & (x <= s.x_right + eps)
        values[inside] = const
    return ComplexField(grid=grid, values=values, y_plane=0.0,
                        provenance="boundary",
                        metadata={"total_width": aperture.total_width})


def aperture_grid(aperture: ApertureSpec, samples_per_slit: int = 32,
                  margin_slits: float = 1.0) -> Grid1D:
    """Build a boundary grid whose cells align with the slit edges.

    The step divides the narrowest slit ``samples_per_slit`` times and
    the grid is offset half a step from the left-most edge, so every
    commensurate edge falls on a cell boundary (midway between sample
    points).  That makes the rasterized top-hat exact under trapezoid
    quadrature and makes the piecewise-constant-per-cell Fourier
    transform telescope to the exact slit-interval transform.
    """
    step = aperture.min_width / samples_per_slit
    lo, hi = aperture.extent
    pad = margin_slits * aperture.min_width
    # First point half a step left of (lo - pad-rounded-to-step).
    n_pad = int(math.ceil(pad / step))
    start = lo - (n_pad + 0.5) * step
    count = int(math.ceil((hi + pad - start) / step)) + 1
    return Grid1D(start=start, step=step, count=count)
