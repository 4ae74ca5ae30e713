"""Brute-force cross-checks for the analytic shortcuts.

Nothing here touches the exact polynomial algebra or the adaptive integrator:
P_n is integrated over xi as written, with scipy's Hermite evaluation, and
f differences nest that inside an outer zeta integral.  Both levels use fixed
composite Gauss-Legendre rules, refined by panel doubling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import sympy
from scipy.special import erf, eval_hermite

from . import spectrum
from .polynomial import p_poly, poly_eval

P_GUARD = 10
F_GUARD = 6
P_THRESHOLD = 1e-9
F_THRESHOLD = 1e-6
NARROW_THRESHOLD = 0.05

_GL_ORDER = 20
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_ORDER)
_XI_PANEL = 0.25


class OracleCapabilityError(ValueError):
    """Request beyond the oracle's cost guard."""


class OracleConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    analytic_value: float
    oracle_value: float
    threshold: float
    settings: dict[str, Any] = field(default_factory=dict)

    @property
    def relative_discrepancy(self) -> float:
        return abs(self.analytic_value - self.oracle_value) / (1 + abs(self.oracle_value))

    @property
    def passed(self) -> bool:
        return self.relative_discrepancy < self.threshold

    def as_record(self) -> dict[str, Any]:
        rec = {
            "quantity": self.quantity,
            "analytic_value": self.analytic_value,
            "oracle_value": self.oracle_value,
            "relative_discrepancy": self.relative_discrepancy,
            "threshold": self.threshold,
            "passed": self.passed,
        }
        rec.update(self.settings)
        return rec


def _composite_nodes(a: float, b: float, panels: int):
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    w = (half[:, None] * _GL_W[None, :]).ravel()
    return x, w


def _p_integrand(n: int, z: np.ndarray, xi: np.ndarray) -> np.ndarray:
    z = z[:, None]
    xi = xi[None, :]
    hn2 = eval_hermite(n, xi) ** 2
    plus = np.exp(-0.5 * z * z - 2 * xi * xi + 2 * z * xi) * eval_hermite(n, xi - z) ** 2
    minus = np.exp(-0.5 * z * z - 2 * xi * xi - 2 * z * xi) * eval_hermite(n, xi + z) ** 2
    return hn2 * (plus + minus)


def _xi_half_width(n: int, z_max: float) -> float:
    # Gaussian lumps at +-z/2 of width 1/2, times a degree-4n polynomial
    return z_max / 2 + 6.0 + math.sqrt(4 * n + 2)


def _p_values(n: int, z: np.ndarray) -> tuple[np.ndarray, float]:
    z = np.asarray(z, dtype=float)
    L = _xi_half_width(n, float(np.max(np.abs(z))))
    while True:
        panels = int(math.ceil(2 * L / _XI_PANEL))
        xi, w = _composite_nodes(-L, L, panels)
        vals = _p_integrand(n, z, xi)
        est = vals @ w
        edge = _p_integrand(n, z, np.array([-L, L])).max(axis=1)
        # integrand at the cut, times a unit width, against the estimate
        if np.all(edge <= 1e-16 * np.abs(est)):
            break
        L += 1.0
    norm = math.sqrt(2 * math.pi) * (2.0**n * math.factorial(n)) ** 2
    return est / norm, L


def p_eval_quadrature(n: int, z):
    """P_n(z) by direct numerical integration over xi."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > P_GUARD:
        raise OracleCapabilityError(f"p_eval_quadrature is guarded at n <= {P_GUARD}, got {n}")
    scalar = np.ndim(z) == 0
    zs = np.atleast_1d(np.asarray(z, dtype=float))
    if not np.all(np.isfinite(zs)):
        raise ValueError("z must be finite")
    vals, _ = _p_values(n, zs)
    return float(vals[0]) if scalar else vals


def _kernel_direct(zeta: np.ndarray) -> np.ndarray:
    return erf(math.sqrt(2) * zeta) / (2 * zeta) - math.sqrt(2 / math.pi)


def _f_diff_once(n1: int, n2: int, alpha: float, panels: int, zeta_max: float) -> float:
    zeta, w = _composite_nodes(0.0, zeta_max, panels)
    u = alpha * zeta
    dp = _p_values(n1, u)[0] - _p_values(n2, u)[0]
    integrand = np.exp(-0.5 * u * u) * dp * _kernel_direct(zeta)
    return alpha**3 * math.sqrt(2 / math.pi) * float(integrand @ w)


def f_diff_bruteforce(
    n1: int, n2: int, alpha: float, rtol: float = 1e-8, max_panels: int = 1024
) -> float:
    """f_tilde(n1) - f_tilde(n2) by nested quadrature over (zeta, xi)."""
    for n in (n1, n2):
        if not 0 <= n <= F_GUARD:
            raise OracleCapabilityError(f"f_diff_bruteforce is guarded at 0 <= n <= {F_GUARD}, got {n}")
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if n1 == n2:
        return 0.0
    # beyond u = alpha*zeta ~ 2 sqrt(2n+1) + 10 the Gaussian envelope is below 1e-20
    u_cut = 2 * math.sqrt(2 * max(n1, n2) + 1) + 10.0
    zeta_max = u_cut / alpha
    panels = 16
    prev = _f_diff_once(n1, n2, alpha, panels, zeta_max)
    while panels < max_panels:
        panels *= 2
        cur = _f_diff_once(n1, n2, alpha, panels, zeta_max)
        if abs(cur - prev) <= rtol * abs(cur):
            return cur
        prev = cur
    raise OracleConvergenceError(
        f"f_diff_bruteforce({n1}, {n2}, {alpha}) not converged at {panels} panels; last={prev!r}"
    )


def narrow_limit_identity() -> sympy.Expr:
    """(3/8) sqrt(2 pi) * (4/3) sqrt(2/pi) in exact symbolic arithmetic; simplifies to 1."""
    pi = sympy.pi
    return sympy.simplify(
        sympy.Rational(3, 8) * sympy.sqrt(2 * pi) * sympy.Rational(4, 3) * sympy.sqrt(2 / pi)
    )


def narrow_limit_check(n_max: int, alpha_large: float) -> list[OracleReport]:
    if alpha_large < 20:
        raise ValueError("narrow-limit check needs alpha_large >= 20")
    target = float(narrow_limit_identity())
    return [
        OracleReport(
            quantity=f"g({n},{n + 1})@narrow",
            analytic_value=spectrum.g_coefficient(n, n + 1, alpha_large),
            oracle_value=target,
            threshold=NARROW_THRESHOLD,
            settings={"n1": n, "n2": n + 1, "alpha": alpha_large},
        )
        for n in range(n_max)
    ]


def p_poly_reports(ns=range(P_GUARD + 1), zs=(0.0, 0.5, 1.0, 2.0, 5.0, 10.0)) -> list[OracleReport]:
    reports = []
    for n in ns:
        oracle = p_eval_quadrature(n, np.asarray(zs, dtype=float))
        for z, o in zip(zs, oracle):
            reports.append(
                OracleReport(
                    quantity=f"P_{n}({z:g})",
                    analytic_value=poly_eval(p_poly(n), z),
                    oracle_value=float(o),
                    threshold=P_THRESHOLD,
                    settings={"n": n, "z": z, "xi_panel": _XI_PANEL, "gl_order": _GL_ORDER},
                )
            )
    return reports


def f_diff_reports(ns=range(F_GUARD), alphas=(1.0, 3.0, 5.0, 10.0)) -> list[OracleReport]:
    reports = []
    for alpha in alphas:
        for n in ns:
            analytic = spectrum.f_tilde(n, alpha) - spectrum.f_tilde(n + 1, alpha)
            reports.append(
                OracleReport(
                    quantity=f"fdiff({n},{n + 1})",
                    analytic_value=analytic,
                    oracle_value=f_diff_bruteforce(n, n + 1, alpha),
                    threshold=F_THRESHOLD,
                    settings={"n1": n, "n2": n + 1, "alpha": alpha, "outer_rtol": 1e-8},
                )
            )
    return reports


def verification_suite() -> list[OracleReport]:
    """Default oracle comparisons: P_n values, f differences, narrow limit."""
    return p_poly_reports() + f_diff_reports() + narrow_limit_check(3, 50.0)
