"""Self-gravitational (Schrodinger-Newton) fine structure of a harmonically trapped particle."""

__version__ = "0.1.0"

from .constants import CODATA, PhysicalConstants, convert_units
from .experiment import (
    ParticleGeometry,
    RayleighEstimate,
    SpectrumScan,
    alpha_of,
    mass_for_alpha,
    rayleigh_rate,
    scan_spectrum,
    sphere_diameter,
)
from .materials import Material, MaterialDatabase, lookup_material, sigma_from_B
from .polynomial import EvenPolynomial, Polynomial, hermite, p_poly, poly_eval
from .spectrum import (
    ShiftResult,
    TrapState,
    delta_omega_sn,
    f_tilde,
    g_coefficient,
    kernel_k,
    narrow_level_shift,
    transition_shift,
)
