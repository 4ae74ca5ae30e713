"""Self-gravitational level shifts and transition-frequency splittings.

For a particle of total mass M in a harmonic trap of angular frequency
omega0, with nuclei smeared over a Gaussian of width sigma, the first-order
shift of level n is

    Delta E_n = -(G hbar m / (4 sigma^3 omega0)) f_n(alpha),
    alpha = 2 sigma sqrt(M omega0 / hbar).

Only the n-dependent part of f_n is computed here (``f_tilde``); the
n-independent constant drops out of every transition frequency.  In the
substituted variable u = alpha * zeta,

    f_tilde(n, alpha) = alpha^2 sqrt(2/pi) int_0^inf du e^{-u^2/2} P_n(u) K(u/alpha),
    K(zeta) = erf(sqrt(2) zeta) / (2 zeta) - sqrt(2/pi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import erf

from .constants import CODATA, PhysicalConstants
from .materials import Material
from .polynomial import p_poly, poly_eval
from .quadrature import QuadratureError, integrate

SQRT_2_OVER_PI = math.sqrt(2 / math.pi)
G_PREFACTOR = 3 / 8 * math.sqrt(2 * math.pi)
NARROW_SLOPE = 4 / 3 * SQRT_2_OVER_PI

ZETA_SWITCH = 1e-3
DEFAULT_EPSREL = 1e-10
DEFAULT_EPSABS = 1e-16
MAX_INTERVALS = 2000
# tail of e^{-u^2/2} P_n(u) relative to its value at u = 0
TAIL_CUTOFF = 1e-22


class ConsistencyError(ValueError):
    pass


@dataclass(frozen=True)
class TrapState:
    mass_M: float  # kg
    omega0: float  # rad/s
    sigma: float  # m
    constants: PhysicalConstants = field(default=CODATA, repr=False, compare=False)

    def __post_init__(self):
        if not (self.mass_M > 0 and self.omega0 > 0 and self.sigma > 0):
            raise ValueError("mass, trap frequency and sigma must be positive")

    @property
    def alpha(self) -> float:
        return 2 * self.sigma * math.sqrt(self.mass_M * self.omega0 / self.constants.hbar)


@dataclass(frozen=True)
class ShiftResult:
    n1: int
    n2: int
    f_tilde_n1: float
    f_tilde_n2: float
    g: float
    delta_omega: float  # rad/s
    quadrature_error_estimate: float
    alpha: float
    delta_omega_sn: float  # rad/s

    @property
    def delta_f(self) -> float:
        """Shift as an ordinary frequency, Hz."""
        return self.delta_omega / (2 * math.pi)


def kernel_k(zeta):
    """erf(sqrt 2 zeta)/(2 zeta) - sqrt(2/pi), with the removable 0/0 handled by series."""
    scalar = np.ndim(zeta) == 0
    z = np.asarray(zeta, dtype=float)
    if np.any(z < 0) or np.any(np.isnan(z)):
        raise ValueError("kernel_k needs zeta >= 0")
    small = z < ZETA_SWITCH
    out = np.empty_like(z)
    zs = z[small]
    # sqrt(2/pi) sum_{k>=1} (-1)^k (2 zeta^2)^k / (k! (2k+1)), six terms
    x = 2 * zs * zs
    series = np.zeros_like(zs)
    term = np.ones_like(zs)
    for k in range(1, 7):
        term = term * (-x) / k
        series += term / (2 * k + 1)
    out[small] = SQRT_2_OVER_PI * series
    zl = z[~small]
    with np.errstate(divide="ignore", invalid="ignore"):
        big = erf(math.sqrt(2) * zl) / (2 * zl) - SQRT_2_OVER_PI
    out[~small] = np.where(np.isinf(zl), -SQRT_2_OVER_PI, big)
    return float(out) if scalar else out


@lru_cache(maxsize=None)
def truncation_bound(n: int) -> float:
    """Upper u limit beyond which e^{-u^2/2} P_n(u) is negligible.

    The integrand is the autocorrelation of |psi_n|^2, supported to about twice
    the classical turning point sqrt(2n+1) before the Gaussian tail.
    """
    p = p_poly(n)
    ref = poly_eval(p, 0.0)
    u = 2 * math.sqrt(2 * n + 1) + 8.0
    while poly_eval(p, u) * math.exp(-u * u / 2) > TAIL_CUTOFF * ref:
        u += 1.0
    return u


@dataclass(frozen=True)
class FTildeResult:
    value: float
    error: float
    upper_limit: float
    intervals: int


@lru_cache(maxsize=4096)
def f_tilde_detailed(
    n: int, alpha: float, epsrel: float = DEFAULT_EPSREL, epsabs: float = DEFAULT_EPSABS
) -> FTildeResult:
    if n < 0:
        raise ValueError("level index must be non-negative")
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    p = p_poly(n)
    u_max = truncation_bound(n)

    def integrand(u):
        return np.exp(-0.5 * u * u) * poly_eval(p, u) * kernel_k(u / alpha)

    breaks = np.arange(0.0, u_max, 1.0).tolist() + [u_max]
    breaks += [alpha * s for s in (0.25, 0.5, 1.0, 2.0, 4.0) if alpha * s < u_max]
    scale = alpha * alpha * SQRT_2_OVER_PI
    try:
        res = integrate(integrand, breaks, epsrel=epsrel, epsabs=epsabs / scale,
                        max_intervals=MAX_INTERVALS)
    except QuadratureError as exc:
        raise QuadratureError(
            f"f_tilde(n={n}, alpha={alpha}) did not converge", exc.estimate * scale,
            exc.error * scale, exc.intervals,
        ) from exc
    return FTildeResult(scale * res.value, scale * res.error, u_max, res.intervals)


def f_tilde(n: int, alpha: float, epsrel: float = DEFAULT_EPSREL) -> float:
    """n-dependent part of f_n(alpha). Always negative."""
    return f_tilde_detailed(n, float(alpha), epsrel).value


def g_coefficient(n1: int, n2: int, alpha: float, epsrel: float = DEFAULT_EPSREL) -> float:
    """Splitting coefficient g_{n1 n2}(alpha) for n2 > n1; tends to n2 - n1 at large alpha."""
    if not n2 > n1 >= 0:
        raise ValueError(f"need n2 > n1 >= 0, got n1={n1}, n2={n2}")
    return G_PREFACTOR * (f_tilde(n1, alpha, epsrel) - f_tilde(n2, alpha, epsrel))


def delta_omega_sn(material: Material, omega0: float, constants: PhysicalConstants = CODATA) -> float:
    """Frequency-shift scale sqrt(2/pi) G m / (3 omega0 sigma^3), rad/s."""
    if not omega0 > 0:
        raise ValueError("omega0 must be positive")
    m = material.atomic_mass * constants.amu
    return SQRT_2_OVER_PI * constants.G * m / (3 * omega0 * material.sigma**3)


def transition_shift(
    material: Material, trap: TrapState, n1: int, n2: int, epsrel: float = DEFAULT_EPSREL
) -> ShiftResult:
    if not math.isclose(trap.sigma, material.sigma, rel_tol=1e-12):
        raise ConsistencyError(
            f"trap sigma {trap.sigma!r} does not match {material.name} sigma {material.sigma!r}"
        )
    if not n2 > n1 >= 0:
        raise ValueError(f"need n2 > n1 >= 0, got n1={n1}, n2={n2}")
    alpha = trap.alpha
    r1 = f_tilde_detailed(n1, alpha, epsrel)
    r2 = f_tilde_detailed(n2, alpha, epsrel)
    g = G_PREFACTOR * (r1.value - r2.value)
    scale = delta_omega_sn(material, trap.omega0, trap.constants)
    # dimensionless error of g
    err = G_PREFACTOR * (r1.error + r2.error)
    return ShiftResult(
        n1=n1,
        n2=n2,
        f_tilde_n1=r1.value,
        f_tilde_n2=r2.value,
        g=g,
        delta_omega=scale * g,
        quadrature_error_estimate=err,
        alpha=alpha,
        delta_omega_sn=scale,
    )


def narrow_level_shift(
    material: Material, omega0: float, n: int, constants: PhysicalConstants = CODATA
) -> float:
    """n-proportional part of Delta E_n / hbar in the narrow-wavefunction limit, rad/s.

    Equals Delta omega_SN (n + 1/2), so adjacent levels differ by exactly
    Delta omega_SN.  The n-independent M^{5/3} omega0 part is not included.
    """
    if n < 0:
        raise ValueError("level index must be non-negative")
    return delta_omega_sn(material, omega0, constants) * (n + 0.5)
