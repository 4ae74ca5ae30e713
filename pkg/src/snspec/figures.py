"""Plot-ready record streams for the g(alpha) curves and the mass-scan spectrum."""
from __future__ import annotations

import math
from typing import Iterator

import numpy as np

from .constants import CODATA
from .experiment import scan_spectrum
from .materials import Material
from .quadrature import QuadratureError
from .spectrum import DEFAULT_EPSREL, g_coefficient


def emit_fig2_data(
    alpha_min: float = 0.1,
    alpha_max: float = 100.0,
    points: int = 40,
    n_max: int = 13,
    epsrel: float = DEFAULT_EPSREL,
) -> Iterator[dict]:
    """g(n, n+1, alpha) on a log-spaced alpha grid, one record per (alpha, n)."""
    if not 0 < alpha_min <= alpha_max:
        raise ValueError("need 0 < alpha_min <= alpha_max")
    if points < 1 or n_max < 1:
        raise ValueError("need points >= 1 and n_max >= 1")
    grid = np.geomspace(alpha_min, alpha_max, points) if points > 1 else np.array([alpha_min])
    for alpha in grid:
        alpha = float(alpha)
        for n in range(n_max):
            rec = {"alpha": alpha, "n1": n, "n2": n + 1, "g": math.nan, "ok": True, "epsrel": epsrel}
            try:
                rec["g"] = g_coefficient(n, n + 1, alpha, epsrel)
            except QuadratureError:
                rec["ok"] = False
            yield rec


def emit_fig3_data(
    material: Material,
    omega0: float,
    mass_min: float,
    mass_max: float,
    points: int = 41,
    n_max: int = 13,
    epsrel: float = DEFAULT_EPSREL,
    workers: int = 1,
) -> Iterator[dict]:
    """Adjacent-line frequencies over a log-spaced mass grid (masses in kg)."""
    scan = scan_spectrum(material, omega0, mass_min, mass_max, points, n_max, epsrel, workers=workers)
    for point in scan.points:
        base = {
            "material": material.name,
            "omega0_rad_s": omega0,
            "mass_amu": point.mass / CODATA.amu,
            "mass_kg": point.mass,
            "alpha": point.alpha,
        }
        if point.regime == "failed":
            yield {**base, "n1": -1, "n2": -1, "g": math.nan, "delta_omega_rad_s": math.nan,
                   "delta_f_hz": math.nan, "line_omega_rad_s": math.nan,
                   "line_frequency_hz": math.nan, "regime": "failed"}
            continue
        for line in point.lines:
            yield {
                **base,
                "n1": line.n1,
                "n2": line.n2,
                "g": line.g,
                "delta_omega_rad_s": line.delta_omega,
                "delta_f_hz": line.delta_omega / (2 * math.pi),
                "line_omega_rad_s": line.line_omega,
                "line_frequency_hz": line.line_frequency_hz,
                "regime": point.regime,
            }
