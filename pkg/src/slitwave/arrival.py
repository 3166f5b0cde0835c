"""Trajectory-based arrival probability density behind the grating.

A particle leaving the aperture point x'' with transverse wavenumber
k_x travels in a straight line and reaches x = x'' + hbar k_x t / m at
time t, so the arrival density is the |c|^2-weighted window integral

    P(x, t) = sum_i (1 / total_width)
              * integral of |c(k_x)|^2 over
                k_x in [(m/(hbar t))(x - right_i), (m/(hbar t))(x - left_i)]

for constant-amplitude slits.  Particles wider than a slit cannot pass
it; the blocked variant drops those windows while keeping the
full-aperture momentum distribution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AllSlitsBlockedError, SlitwaveError, TailBudgetError
from .geometry import ApertureSpec, BeamParams, ComplexField, Grid1D
from .quadrature import interval_masses
from .spectrum import MomentumSpectrum, field_runs
from .units import HBAR

__all__ = [
    "ArrivalDensity",
    "arrival_density_general",
    "arrival_density_slitsum",
    "arrival_density_blocked",
    "arrival_grid",
]


@dataclass(frozen=True)
class ArrivalDensity:
    """Arrival density on a detector grid with its per-slit decomposition."""

    grid: Grid1D
    total: np.ndarray
    per_slit: tuple[np.ndarray, ...]
    t: float
    passing_mask: tuple[bool, ...]
    mass: float
    renormalized: bool = False
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        total = np.asarray(self.total, dtype=float)
        object.__setattr__(self, "total", total)
        object.__setattr__(self, "per_slit",
                           tuple(np.asarray(p, dtype=float) for p in self.per_slit))

    def slit_masses(self) -> tuple[float, ...]:
        dx = self.grid.step
        return tuple(float(np.trapezoid(p, dx=dx)) for p in self.per_slit)


def _tail_check(spectrum: MomentumSpectrum, lo: np.ndarray, hi: np.ndarray,
                tail_tolerance: float):
    start, stop = spectrum.grid.span()
    if spectrum.tail_bound is None or spectrum.tail_bound <= tail_tolerance:
        return
    if lo.min() < start or hi.max() > stop:
        raise TailBudgetError(
            f"arrival windows reach beyond the spectrum grid while its tail "
            f"bound {spectrum.tail_bound:.3e} exceeds {tail_tolerance:.3e}")


def _window_masses(spectrum: MomentumSpectrum, cum: np.ndarray, scale: float,
                   xs: np.ndarray, left: float, right: float) -> np.ndarray:
    """integral of |c|^2 over [(scale)(x - right), (scale)(x - left)] per x."""
    lo = scale * (xs - right)
    hi = scale * (xs - left)
    return interval_masses(spectrum.density(), spectrum.grid, lo, hi, cum=cum)


def arrival_density_general(spectrum: MomentumSpectrum, boundary: ComplexField,
                            beam: BeamParams, t: float, xgrid: Grid1D,
                            tail_tolerance: float = 1e-4) -> ArrivalDensity:
    """Arrival density for an arbitrary sampled boundary field.

    Reads |phi(.,0)|^2 as piecewise constant over the boundary grid
    cells and accumulates each cell's |c|^2 window; this is the direct
    discretization of the trajectory integral and serves as the oracle
    for the per-slit closed form.
    """
    if t <= 0:
        raise SlitwaveError(f"arrival density needs t > 0, got {t}")
    runs = field_runs(boundary)
    if not runs:
        raise SlitwaveError("boundary field is identically zero")
    xs = xgrid.points()
    scale = beam.mass / (HBAR * t)
    cum = spectrum.cumulative_density()
    total = np.zeros(xgrid.count)
    lo_all = np.array([scale * (xs.min() - b) for _, b, _ in runs])
    hi_all = np.array([scale * (xs.max() - a) for a, _, _ in runs])
    _tail_check(spectrum, lo_all, hi_all, tail_tolerance)
    for (a, b, amp) in runs:
        w = abs(amp) ** 2
        total += w * _window_masses(spectrum, cum, scale, xs, a, b)
    dx = xgrid.step
    mass = float(np.trapezoid(total, dx=dx))
    return ArrivalDensity(grid=xgrid, total=total, per_slit=(), t=t,
                          passing_mask=(), mass=mass,
                          metadata={"evaluator": "general",
                                    "n_runs": len(runs)})


def _slit_components(spectrum: MomentumSpectrum, aperture: ApertureSpec,
                     beam: BeamParams, t: float, xgrid: Grid1D,
                     tail_tolerance: float):
    xs = xgrid.points()
    scale = beam.mass / (HBAR * t)
    cum = spectrum.cumulative_density()
    inv_width = 1.0 / aperture.total_width
    lo_all = np.array([scale * (xs.min() - s.x_right) for s in aperture.slits])
    hi_all = np.array([scale * (xs.max() - s.x_left) for s in aperture.slits])
    _tail_check(spectrum, lo_all, hi_all, tail_tolerance)
    comps = []
    for s in aperture.slits:
        comps.append(inv_width * _window_masses(spectrum, cum, scale, xs,
                                                s.x_left, s.x_right))
    return comps


def arrival_density_slitsum(spectrum: MomentumSpectrum, aperture: ApertureSpec,
                            beam: BeamParams, t: float, xgrid: Grid1D,
                            tail_tolerance: float = 1e-4) -> ArrivalDensity:
    """Per-slit arrival density for a constant-amplitude aperture.

    Component i is (1/total_width) times the |c|^2 mass in the window
    [(m/(hbar t))(x - right_i), (m/(hbar t))(x - left_i)]; the total is
    their sum, evaluated on the shared cumulative table so the
    decomposition is exact.
    """
    if t <= 0:
        raise SlitwaveError(f"arrival density needs t > 0, got {t}")
    comps = _slit_components(spectrum, aperture, beam, t, xgrid, tail_tolerance)
    total = np.zeros(xgrid.count)
    for c in comps:
        total += c
    mask = tuple(True for _ in aperture.slits)
    mass = float(np.trapezoid(total, dx=xgrid.step))
    return ArrivalDensity(grid=xgrid, total=total, per_slit=tuple(comps),
                          t=t, passing_mask=mask, mass=mass,
                          metadata={"evaluator": "slitsum"})


def arrival_density_blocked(spectrum: MomentumSpectrum, aperture: ApertureSpec,
                            beam: BeamParams, t: float, xgrid: Grid1D,
                            renormalize: bool = False,
                            tail_tolerance: float = 1e-4) -> ArrivalDensity:
    """Arrival density when the particle diameter blocks the narrow slits.

    A slit passes only if its width strictly exceeds the diameter.  The
    momentum distribution is the full-aperture one (the boundary-value
    problem does not know the particle size), so blocked slits only
    lose their launch windows.  With ``renormalize`` the density is
    divided by the passing mass fraction; by default the raw
    conditional mass (passing width / total width) is reported.

    With diameter zero this is the exact same computation as
    :func:`arrival_density_slitsum` (every window passes).
    """
    if t <= 0:
        raise SlitwaveError(f"arrival density needs t > 0, got {t}")
    mask = aperture.passing_mask(beam.diameter)
    if not any(mask):
        raise AllSlitsBlockedError(
            f"particle diameter {beam.diameter} blocks all slits "
            f"(widths {[s.width for s in aperture.slits]})")
    comps = _slit_components(spectrum, aperture, beam, t, xgrid, tail_tolerance)
    total = np.zeros(xgrid.count)
    kept = []
    for passes, c in zip(mask, comps):
        if passes:
            total += c
            kept.append(c)
        else:
            kept.append(np.zeros(xgrid.count))
    scale = 1.0
    if renormalize:
        passing_width = sum(s.width for s, p in zip(aperture.slits, mask) if p)
        scale = aperture.total_width / passing_width
        total = total * scale
        kept = [c * scale for c in kept]
    mass = float(np.trapezoid(total, dx=xgrid.step))
    return ArrivalDensity(grid=xgrid, total=total, per_slit=tuple(kept),
                          t=t, passing_mask=mask, mass=mass,
                          renormalized=renormalize,
                          metadata={"evaluator": "blocked",
                                    "diameter": beam.diameter,
                                    "spectrum": "full-aperture"})


def arrival_grid(aperture: ApertureSpec, beam: BeamParams, t: float,
                 coverage_tail: float = 1e-4, points_per_feature: int = 8,
                 max_count: int = 400_001) -> Grid1D:
    """Detector grid covering the arrival density support at time t.

    Windows move by hbar k t / m, so the support is the aperture plus
    the momentum extent holding all but ``coverage_tail`` of |c|^2
    mapped through that factor; the finest density feature is one
    window shift per spectral fringe period.
    """
    import math

    if t <= 0:
        raise SlitwaveError(f"arrival grid needs t > 0, got {t}")
    n = aperture.n_slits
    k_cov = 2.0 * n / (math.pi * aperture.total_width * coverage_tail)
    shift = HBAR * t / beam.mass
    lo, hi = aperture.extent
    half = max(abs(lo), abs(hi)) + shift * k_cov
    fringe = shift * 2.0 * math.pi / aperture.span_width
    step = min(fringe / points_per_feature, aperture.min_width / 4.0)
    count = 2 * int(math.ceil(half / step)) + 1
    if count > max_count:
        step = 2.0 * half / (max_count - 1)
        count = max_count
    return Grid1D(start=-(count // 2) * step, step=step, count=count)
