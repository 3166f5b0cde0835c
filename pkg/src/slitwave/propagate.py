"""Region-II wave fields by four routes.

* Fresnel-Kirchhoff integral (spherical wavelets with obliquity factor)
* angular-spectrum synthesis from the momentum amplitude
* Fresnel chirp convolution over the aperture
* far-field closed form |phi|^2 = (k/y) |c(kx/y)|^2

All routes return the reduced field: the carrier factors e^{iky} (and
e^{-i omega t} in the time view) are never sampled, so fields from
different methods are directly comparable and double precision is never
asked to resolve k*y ~ 1e10 radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NotInFarFieldError, SlitwaveError, TailBudgetError
from .geometry import ApertureSpec, BeamParams, ComplexField, Grid1D
from .quadrature import QuadratureBudget, gauss_nodes
from .spectrum import MomentumSpectrum, field_runs, tail_mass_bound

__all__ = [
    "PropagationConfig",
    "propagate_angular_spectrum",
    "propagate_fresnel",
    "propagate_kirchhoff",
    "far_field_wavefunction",
    "transverse_psi",
    "far_field_threshold",
    "fresnel_number",
    "kirchhoff_prefactor_magnitude",
    "detector_grid",
]

FAR_FIELD_FRESNEL_LIMIT = 0.05


@dataclass(frozen=True)
class PropagationConfig:
    """Method selection and the Kirchhoff source model.

    ``source_distance`` and ``source_amplitude`` are the distance a and
    scale A of the point source feeding the grating; they only matter
    for the raw (unrescaled) Kirchhoff field, whose overall amplitude
    the diffraction formula inherits from the source.
    """

    method: str = "fresnel"
    source_distance: float = 1.0
    source_amplitude: float = 1.0
    rescale_to_unit_mass: bool = True

    _METHODS = ("kirchhoff", "angular-spectrum", "fresnel", "far-field")

    def __post_init__(self):
        if self.method not in self._METHODS:
            raise SlitwaveError(f"unknown method {self.method!r}; "
                                f"choose from {self._METHODS}")
        if self.method == "kirchhoff" and self.source_distance <= 0:
            raise SlitwaveError("kirchhoff needs source_distance > 0")


def fresnel_number(aperture_span: float, beam: BeamParams, y: float) -> float:
    return aperture_span ** 2 / (beam.wavelength * y)


def far_field_threshold(aperture: ApertureSpec, beam: BeamParams,
                        limit: float = FAR_FIELD_FRESNEL_LIMIT) -> float:
    """Distance beyond which the full-aperture Fresnel number drops below limit."""
    return aperture.span_width ** 2 / (beam.wavelength * limit)


def kirchhoff_prefactor_magnitude(source_amplitude: float, source_distance: float,
                                  wavelength: float) -> float:
    """|-i A e^{ika} / (2 lambda a)| = A / (2 lambda a)."""
    return source_amplitude / (2.0 * wavelength * source_distance)


def _spectrum_span_check(spectrum: MomentumSpectrum, tail_tolerance: float):
    if spectrum.tail_bound is not None and spectrum.tail_bound > tail_tolerance:
        raise TailBudgetError(
            f"spectrum tail bound {spectrum.tail_bound:.3e} exceeds "
            f"{tail_tolerance:.3e}; widen the momentum grid")


def propagate_angular_spectrum(spectrum: MomentumSpectrum, beam: BeamParams,
                               y: float, xgrid: Grid1D, *,
                               tail_tolerance: float = 1e-4,
                               window_zones: float = 16.0,
                               phase_residual: float = 1e-3) -> ComplexField:
    """Synthesize phi(x, y) = (1/sqrt(2 pi)) integral c(k) e^{ikx - i k^2 y/(2 k0)} dk.

    The integral is evaluated per detector point with a linear-amplitude,
    exact-linear-phase Filon rule on the spectrum grid.  When the
    spectrum carries its per-slit component factorization, each slit's
    center phase folds into the kernel phase and only the slow sinc
    envelope is interpolated.  Far from the grating the integrand is
    stationary only near k* = k0 x / y, so the rule runs on a tapered
    window of ``window_zones`` Fresnel zones around each component's
    stationary point; near the grating it runs over the full span.  The
    grid is subdivided on the fly so the quadratic phase residual per
    cell stays below ``phase_residual`` radians.
    """
    if y < 0:
        raise SlitwaveError(f"plane distance must be >= 0, got {y}")
    _spectrum_span_check(spectrum, tail_tolerance)

    grid = spectrum.grid
    gamma = y / (2.0 * beam.k)
    h = grid.step
    # subdivision factor keeping gamma*(h/r)^2/4 below the residual budget
    r = 1
    if gamma > 0:
        r = max(1, int(math.ceil(h * math.sqrt(gamma / (4.0 * phase_residual)))))
    ker = kernels.get()
    xs = xgrid.points()

    zone = math.sqrt(2.0 * math.pi * beam.k / y) if y > 0 else math.inf
    halfwidth = window_zones * zone
    full_half = 0.5 * (grid.stop - grid.start)
    # Windowing drops the non-stationary remainder; only do it when the
    # window is a genuinely small slice of the stored span.
    use_window = bool(spectrum.components) and halfwidth < 0.5 * full_half

    if spectrum.components:
        centers = np.array([c.center for c in spectrum.components])
        widths = np.array([c.width for c in spectrum.components])
        amps = np.array([c.amplitude for c in spectrum.components],
                        dtype=np.complex128)
        vals = ker.filon_components_field(
            xs, grid.start, h, grid.count, gamma, centers, widths, amps,
            refine=r,
            window_halfwidth=halfwidth if use_window else 0.0,
            kstar_coef=(beam.k / y) if (use_window and y > 0) else 0.0)
        # components carry sqrt(2 pi) * c, so the synthesis needs 1/(2 pi)
        vals = vals / (2.0 * math.pi)
    else:
        vals = ker.filon_samples_field(xs, grid.start, h, spectrum.values,
                                       gamma, refine=r)
        vals = vals / math.sqrt(2.0 * math.pi)
    return ComplexField(grid=xgrid, values=vals, y_plane=y,
                        provenance="angular-spectrum",
                        metadata={"windowed": bool(use_window),
                                  "refinement": r,
                                  "spectrum_source": spectrum.source})


def propagate_fresnel(boundary: ComplexField, beam: BeamParams, y: float,
                      xgrid: Grid1D,
                      budget: QuadratureBudget | None = None) -> ComplexField:
    """Fresnel chirp integral over the aperture, without the e^{iky} factor.

    phi(x,y) = e^{-i pi/4} sqrt(k/(2 pi y)) * integral over the open
    region of phi(x'', 0) e^{i k (x - x'')^2/(2y)} dx''.  The boundary
    samples are read as constant runs over grid cells; each run's chirp
    integral is done with phase-equalized Gauss-Legendre cells.
    """
    if y <= 0:
        raise SlitwaveError(f"fresnel propagation needs y > 0, got {y}")
    if budget is None:
        budget = QuadratureBudget()
    runs = field_runs(boundary)
    if not runs:
        raise SlitwaveError("boundary field is identically zero")
    lo = np.array([a for a, _, _ in runs])
    hi = np.array([b for _, b, _ in runs])
    amps = np.array([v for _, _, v in runs], dtype=np.complex128)
    alpha = beam.k / (2.0 * y)
    glx, glw = gauss_nodes(budget.rule_order)
    ker = kernels.get()
    vals = ker.chirp_field(xgrid.points(), lo, hi, amps, alpha, glx, glw,
                           budget.target_phase_step,
                           budget.max_nodes // budget.rule_order)
    prefactor = np.exp(-0.25j * math.pi) * math.sqrt(beam.k / (2.0 * math.pi * y))
    return ComplexField(grid=xgrid, values=prefactor * vals, y_plane=y,
                        provenance="fresnel", metadata={"n_runs": len(runs)})


def propagate_kirchhoff(boundary: ComplexField, beam: BeamParams,
                        config: PropagationConfig, y: float, xgrid: Grid1D,
                        budget: QuadratureBudget | None = None) -> ComplexField:
    """Fresnel-Kirchhoff integral with exact spherical kernel and obliquity.

    Evaluates -(iA/(2 lambda)) (1/a) * integral of (e^{ik(s-y)}/s)(1 + y/s) dx''
    with s = sqrt(y^2 + (x'' - x)^2); the constant phase factors e^{ika}
    and e^{iky} are carried symbolically.  With ``rescale_to_unit_mass``
    the output is scaled to unit grid mass, since the raw formula
    inherits the arbitrary source amplitude.
    """
    if y <= 0:
        raise SlitwaveError(f"kirchhoff propagation needs y > 0, got {y}")
    if config.method != "kirchhoff":
        raise SlitwaveError(f"config.method is {config.method!r}, expected 'kirchhoff'")
    if budget is None:
        budget = QuadratureBudget()
    runs = field_runs(boundary)
    if not runs:
        raise SlitwaveError("boundary field is identically zero")
    lo = np.array([a for a, _, _ in runs])
    hi = np.array([b for _, b, _ in runs])
    amps = np.array([v for _, _, v in runs], dtype=np.complex128)
    glx, glw = gauss_nodes(budget.rule_order)
    ker = kernels.get()
    vals = ker.kirchhoff_field(xgrid.points(), lo, hi, amps, y, beam.k,
                               glx, glw, budget.target_phase_step,
                               budget.max_nodes // budget.rule_order)
    # -i A/(2 lambda a); e^{ika} carried symbolically
    pref = -1j * config.source_amplitude / (2.0 * beam.wavelength
                                            * config.source_distance)
    vals = pref * vals
    scale = 1.0
    if config.rescale_to_unit_mass:
        mass = float(np.trapezoid(np.abs(vals) ** 2, dx=xgrid.step))
        if mass <= 0:
            raise SlitwaveError("kirchhoff field has zero mass on the grid")
        scale = 1.0 / math.sqrt(mass)
        vals = vals * scale
    return ComplexField(grid=xgrid, values=vals, y_plane=y,
                        provenance="kirchhoff",
                        metadata={"rescaled": config.rescale_to_unit_mass,
                                  "rescale_factor": scale,
                                  "prefactor_magnitude":
                                      kirchhoff_prefactor_magnitude(
                                          config.source_amplitude,
                                          config.source_distance,
                                          beam.wavelength)})


def far_field_wavefunction(spectrum: MomentumSpectrum, beam: BeamParams,
                           y: float, xgrid: Grid1D,
                           aperture_span: float | None = None,
                           limit: float = FAR_FIELD_FRESNEL_LIMIT) -> ComplexField:
    """Closed-form far-zone field sqrt(k/y) e^{-i pi/4} e^{ikx^2/2y} c(kx/y).

    Requires the full-aperture Fresnel number below ``limit``; the
    spectrum is interpolated at K_x = k x / y.
    """
    if y <= 0:
        raise SlitwaveError(f"far-field evaluation needs y > 0, got {y}")
    if aperture_span is None:
        if spectrum.components:
            los = [c.center - 0.5 * c.width for c in spectrum.components]
            his = [c.center + 0.5 * c.width for c in spectrum.components]
            aperture_span = max(his) - min(los)
        else:
            raise SlitwaveError("aperture_span needed when the spectrum carries "
                                "no component geometry")
    F = fresnel_number(aperture_span, beam, y)
    if F >= limit:
        raise NotInFarFieldError(
            f"Fresnel number {F:.3g} at y={y} exceeds the far-field limit "
            f"{limit}; threshold distance is "
            f"{aperture_span ** 2 / (beam.wavelength * limit):.3g} m")
    xs = xgrid.points()
    kq = beam.k * xs / y
    kpts = spectrum.grid.points()
    cre = np.interp(kq, kpts, spectrum.values.real, left=0.0, right=0.0)
    cim = np.interp(kq, kpts, spectrum.values.imag, left=0.0, right=0.0)
    phase = np.exp(1j * beam.k * xs * xs / (2.0 * y) - 0.25j * math.pi)
    vals = math.sqrt(beam.k / y) * phase * (cre + 1j * cim)
    return ComplexField(grid=xgrid, values=vals, y_plane=y,
                        provenance="far-field",
                        metadata={"fresnel_number": F})


def transverse_psi(spectrum: MomentumSpectrum, beam: BeamParams, t: float,
                   xgrid: Grid1D, **kwargs) -> ComplexField:
    """Transverse time evolution psi(x, t) = phi(x, v t).

    Pure delegation to the angular-spectrum propagator at y = v t, so
    the space and time views are bit-identical.
    """
    if t < 0:
        raise SlitwaveError(f"time must be >= 0, got {t}")
    out = propagate_angular_spectrum(spectrum, beam, beam.velocity * t,
                                     xgrid, **kwargs)
    out.metadata["t"] = t
    return out


def detector_grid(aperture: ApertureSpec, beam: BeamParams, y: float,
                  coverage_tail: float = 1e-3, points_per_fringe: int = 8,
                  max_count: int = 400_001) -> Grid1D:
    """Symmetric x grid containing the predicted mass at plane y.

    The half-width maps the momentum extent holding all but
    ``coverage_tail`` of |c|^2 through x = k_x y / k, plus the aperture
    itself; the step resolves the finest fringe (period 2 pi y/(span k))
    ``points_per_fringe`` times, clamped near the grating to a fraction
    of the narrowest slit.
    """
    n = aperture.n_slits
    k_cov = 2.0 * n / (math.pi * aperture.total_width * coverage_tail)
    lo, hi = aperture.extent
    half = max(abs(lo), abs(hi)) + y * k_cov / beam.k
    if y > 0:
        step = (2.0 * math.pi * y / (aperture.span_width * beam.k)) / points_per_fringe
    else:
        step = aperture.min_width / 32.0
    step = min(step, aperture.min_width / 16.0)
    count = 2 * int(math.ceil(half / step)) + 1
    if count > max_count:
        step = 2.0 * half / (max_count - 1)
        count = max_count
    return Grid1D(start=-(count // 2) * step, step=step, count=count)
