"""Matter-wave diffraction behind asymmetric multi-slit gratings.

Computes the transverse wave function behind the grating by several
independent numerical routes (Fresnel-Kirchhoff, angular spectrum,
Fresnel convolution, far-field closed form), the transverse momentum
distribution, and the trajectory-based arrival density, including the
regime where the particle diameter exceeds the width of some slits.
"""

from .arrival import (
    ArrivalDensity,
    arrival_density_blocked,
    arrival_density_general,
    arrival_density_slitsum,
    arrival_grid,
)
from .geometry import (
    ApertureSpec,
    BeamParams,
    ComplexField,
    Grid1D,
    SlitInterval,
    aperture_grid,
    build_aperture_function,
    double_slit,
    paper_aperture,
    paper_beam,
    slit_index_at,
)
from .propagate import (
    PropagationConfig,
    detector_grid,
    far_field_threshold,
    far_field_wavefunction,
    fresnel_number,
    propagate_angular_spectrum,
    propagate_fresnel,
    propagate_kirchhoff,
    transverse_psi,
)
from .quadrature import QuadratureBudget, integrate_oscillatory, integrate_smooth
from .spectrum import (
    MomentumSpectrum,
    momentum_amplitude_analytic,
    momentum_amplitude_numeric,
    momentum_grid,
    momentum_mass,
    spectrum_from_field,
)
from .units import HBAR

__version__ = "0.1.0"

__all__ = [
    "ApertureSpec", "ArrivalDensity", "BeamParams", "ComplexField", "Grid1D",
    "HBAR", "MomentumSpectrum", "PropagationConfig", "QuadratureBudget",
    "SlitInterval", "aperture_grid", "arrival_density_blocked",
    "arrival_density_general", "arrival_density_slitsum", "arrival_grid",
    "build_aperture_function", "detector_grid", "double_slit",
    "far_field_threshold", "far_field_wavefunction", "fresnel_number",
    "integrate_oscillatory", "integrate_smooth", "momentum_amplitude_analytic",
    "momentum_amplitude_numeric", "momentum_grid", "momentum_mass",
    "paper_aperture", "paper_beam", "propagate_angular_spectrum",
    "propagate_fresnel", "propagate_kirchhoff", "slit_index_at",
    "spectrum_from_field", "transverse_psi",
]
