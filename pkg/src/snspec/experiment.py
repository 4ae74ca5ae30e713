"""Experiment sizing: alpha <-> mass <-> geometry, mass scans, Rayleigh background."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .constants import CODATA, ZETA7, PhysicalConstants
from .materials import Material
from .quadrature import QuadratureError
from .spectrum import DEFAULT_EPSREL, TrapState, delta_omega_sn, g_coefficient

WIDE_G_MAX = 0.05
NARROW_SPREAD = 0.05

RAYLEIGH_PREFACTOR = 30720 * math.pi**5 * ZETA7
RAYLEIGH_PREFACTOR_ROUNDED = 1e7


def alpha_of(M: float, omega0: float, sigma: float, constants: PhysicalConstants = CODATA) -> float:
    """Dimensionless width 2 sigma sqrt(M omega0 / hbar)."""
    if not (M > 0 and omega0 > 0 and sigma > 0):
        raise ValueError("M, omega0 and sigma must be positive")
    return 2 * sigma * math.sqrt(M * omega0 / constants.hbar)


def mass_for_alpha(alpha: float, omega0: float, sigma: float, constants: PhysicalConstants = CODATA) -> float:
    """Total mass (kg) at which the trap ground state has the given alpha."""
    if not (alpha > 0 and omega0 > 0 and sigma > 0):
        raise ValueError("alpha, omega0 and sigma must be positive")
    return constants.hbar * alpha**2 / (4 * sigma**2 * omega0)


def sphere_diameter(M: float, density: float) -> float:
    if not (M > 0 and density > 0):
        raise ValueError("M and density must be positive")
    return 2 * (3 * M / (4 * math.pi * density)) ** (1 / 3)


@dataclass(frozen=True)
class ParticleGeometry:
    shape: str
    radius: Optional[float] = None
    diameter: Optional[float] = None
    thickness: Optional[float] = None

    def __post_init__(self):
        if self.shape == "sphere":
            if not (self.radius and self.radius > 0):
                raise ValueError("sphere needs a positive radius")
        elif self.shape == "disc":
            if not (self.diameter and self.diameter > 0 and self.thickness and self.thickness > 0):
                raise ValueError("disc needs positive diameter and thickness")
        else:
            raise ValueError(f"unknown shape {self.shape!r}")

    @classmethod
    def sphere(cls, radius: float) -> "ParticleGeometry":
        return cls("sphere", radius=radius)

    @classmethod
    def disc(cls, diameter: float, thickness: float) -> "ParticleGeometry":
        return cls("disc", diameter=diameter, thickness=thickness)

    @property
    def volume(self) -> float:
        if self.shape == "sphere":
            return 4 * math.pi * self.radius**3 / 3
        return math.pi * self.thickness * self.diameter**2 / 4

    def mass(self, material: Material) -> float:
        return material.density * self.volume


@dataclass(frozen=True)
class RayleighEstimate:
    temperature: float  # K
    volume: float  # m^3
    chi: float  # m^3
    lambda_T: float  # m
    gamma_R: float  # 1/s
    gamma_R_rounded: float  # 1/s, with the 1e7 prefactor


def thermal_wavelength(T: float, constants: PhysicalConstants = CODATA) -> float:
    """lambda_T = h c / (k_B T)."""
    if not T > 0:
        raise ValueError("temperature must be positive")
    return constants.h * constants.c / (constants.kB * T)


def rayleigh_rate(T: float, geometry: ParticleGeometry, constants: PhysicalConstants = CODATA) -> RayleighEstimate:
    """Blackbody-photon Rayleigh scattering rate of a sub-wavelength superconducting particle.

    Polarizability volume chi = 3V; Gamma_R = 30720 pi^5 zeta(7) c chi^2 / lambda_T^7.
    """
    lam = thermal_wavelength(T, constants)
    V = geometry.volume
    chi = 3 * V
    base = constants.c * chi**2 / lam**7
    return RayleighEstimate(
        temperature=T,
        volume=V,
        chi=chi,
        lambda_T=lam,
        gamma_R=RAYLEIGH_PREFACTOR * base,
        gamma_R_rounded=RAYLEIGH_PREFACTOR_ROUNDED * base,
    )


@dataclass(frozen=True)
class SpectralLine:
    n1: int
    n2: int
    g: float
    delta_omega: float  # rad/s
    line_omega: float  # rad/s, omega0 + delta_omega

    @property
    def line_frequency_hz(self) -> float:
        return self.line_omega / (2 * math.pi)


@dataclass(frozen=True)
class ScanPoint:
    index: int
    mass: float  # kg
    alpha: float
    lines: tuple[SpectralLine, ...]
    regime: str  # wide | intermediate | narrow | failed
    error: Optional[str] = None


@dataclass(frozen=True)
class SpectrumScan:
    material: Material
    omega0: float
    mass_grid: tuple[float, ...]
    n_max: int
    points: tuple[ScanPoint, ...]
    delta_omega_sn: float
    constants: PhysicalConstants = field(default=CODATA, repr=False)

    def regimes(self) -> list[str]:
        return [p.regime for p in self.points]

    def intermediate_band(self) -> Optional[tuple[float, float]]:
        """(lowest, highest) mass labelled intermediate, or None."""
        ms = [p.mass for p in self.points if p.regime == "intermediate"]
        return (min(ms), max(ms)) if ms else None


def classify(gs) -> str:
    gs = np.asarray(gs, dtype=float)
    if np.max(np.abs(gs)) < WIDE_G_MAX:
        return "wide"
    mean = float(np.mean(gs))
    if (np.max(gs) - np.min(gs)) < NARROW_SPREAD * abs(mean):
        return "narrow"
    return "intermediate"


def _scan_point(args) -> ScanPoint:
    index, mass, omega0, sigma, n_max, scale, epsrel, constants = args
    alpha = TrapState(mass, omega0, sigma, constants).alpha
    try:
        gs = [g_coefficient(n, n + 1, alpha, epsrel) for n in range(n_max)]
    except QuadratureError as exc:
        return ScanPoint(index, mass, alpha, (), "failed", str(exc))
    lines = tuple(
        SpectralLine(n, n + 1, g, scale * g, omega0 + scale * g) for n, g in enumerate(gs)
    )
    return ScanPoint(index, mass, alpha, lines, classify(gs))


def scan_spectrum(
    material: Material,
    omega0: float,
    mass_min: float,
    mass_max: float,
    points: int,
    n_max: int,
    epsrel: float = DEFAULT_EPSREL,
    constants: PhysicalConstants = CODATA,
    workers: int = 1,
) -> SpectrumScan:
    """Adjacent-line shifts (n, n+1), n < n_max, on a log-spaced mass grid (kg)."""
    if not (0 < mass_min < mass_max):
        raise ValueError("need 0 < mass_min < mass_max")
    if points < 2 or n_max < 1:
        raise ValueError("need points >= 2 and n_max >= 1")
    grid = np.geomspace(mass_min, mass_max, points)
    scale = delta_omega_sn(material, omega0, constants)
    jobs = [
        (i, float(m), omega0, material.sigma, n_max, scale, epsrel, constants)
        for i, m in enumerate(grid)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_point, jobs))
    else:
        results = [_scan_point(j) for j in jobs]
    results.sort(key=lambda p: p.index)
    return SpectrumScan(
        material=material,
        omega0=omega0,
        mass_grid=tuple(float(m) for m in grid),
        n_max=n_max,
        points=tuple(results),
        delta_omega_sn=scale,
        constants=constants,
    )
