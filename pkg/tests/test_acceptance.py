"""End-to-end acceptance checks, one test per criterion.

Each test records a "PASS criterion N: ..." or "FAIL criterion N: ..." line,
listed in the terminal summary, and then asserts.
"""
import math
import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from snspec.constants import CODATA
from snspec.experiment import (
    ParticleGeometry,
    mass_for_alpha,
    rayleigh_rate,
    scan_spectrum,
    sphere_diameter,
)
from snspec.materials import lookup_material
from snspec.oracle import narrow_limit_identity, verification_suite
from snspec.polynomial import p_poly
from snspec.spectrum import delta_omega_sn, g_coefficient

AMU = CODATA.amu
OS = lookup_material("osmium")


def _report(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_table():
    table = {"silicon": 0.00246, "tungsten": 0.128, "osmium": 0.264, "gold": 0.0574}
    t0 = time.perf_counter()
    got = {k: delta_omega_sn(lookup_material(k), 1.0) for k in table}
    dt = time.perf_counter() - t0
    worst = max(abs(got[k] / v - 1) for k, v in table.items())
    detail = ", ".join(f"{k}={got[k]:.4g}" for k in table)
    _report(1, worst < 0.01 and dt < 0.5, f"{detail} (worst {worst:.2%}, {dt * 1e3:.1f} ms)")


def test_criterion_2_mass_relation():
    M = mass_for_alpha(5, 2 * math.pi, OS.sigma) / AMU
    _report(2, 0.5e16 <= M <= 2e16, f"M(alpha=5, 1 Hz) = {M:.3e} amu")


def test_criterion_3_sphere():
    d = sphere_diameter(1e15 * AMU, OS.density)
    _report(3, abs(d / 5.2e-6 - 1) <= 0.02, f"diameter = {d * 1e6:.3f} um")


def test_criterion_4_splitting():
    w = 2 * math.pi * 10
    alpha = 2 * OS.sigma * math.sqrt(1e15 * AMU * w / CODATA.hbar)
    gs = [g_coefficient(n, n + 1, alpha) for n in range(13)]
    dmax = max(abs(a - b) for a, b in zip(gs, gs[1:]))
    mhz = dmax * delta_omega_sn(OS, w) / (2 * math.pi) * 1e3
    _report(4, 0.02 <= mhz <= 0.5, f"max adjacent splitting = {mhz:.4f} mHz at alpha = {alpha:.3f}")


def test_criterion_5_narrow_identity():
    ident = narrow_limit_identity()
    g = g_coefficient(0, 1, 50.0)
    _report(5, ident == 1 and abs(g - 1) <= 0.05, f"identity = {ident}, g(0,1,50) = {g:.5f}")


def test_criterion_6_fig2():
    t0 = time.perf_counter()
    alphas = np.geomspace(0.1, 100, 40)
    g = np.array([[g_coefficient(n, n + 1, a) for n in range(13)] for a in alphas])
    dt = time.perf_counter() - t0
    positive = bool(np.all(g > 0))
    small = float(g[0].max())
    near_one = float(np.abs(g[-1] - 1).max())
    band = (alphas >= 2) & (alphas <= 8)
    ordered = bool(np.all(np.diff(g[band], axis=1) < 0))
    ok = positive and small < 0.01 and near_one < 0.05 and ordered and dt < 300
    _report(6, ok, f"positive={positive}, max g(alpha=0.1)={small:.2e}, max|g-1|(alpha=100)={near_one:.3f}, "
                   f"ordered on [2,8] ({int(band.sum())} points)={ordered}, {dt:.1f} s")


def test_criterion_7_fig3():
    scan = scan_spectrum(OS, 2 * math.pi * 10, 1e13 * AMU, 1e18 * AMU, 51, 13)
    regimes = scan.regimes()
    band = scan.intermediate_band()
    decades = math.log10(band[1] / band[0]) if band else 0.0
    ok = band is not None and 2 <= decades <= 4 and regimes[0] == "wide" and regimes[-1] == "narrow"
    lo, hi = (f"{b / AMU:.3g}" for b in band) if band else ("-", "-")
    _report(7, ok, f"intermediate {lo}..{hi} amu ({decades:.2f} decades), tails {regimes[0]}/{regimes[-1]}")


def test_criterion_8_rayleigh():
    est = rayleigh_rate(0.1, ParticleGeometry.disc(3e-6, 1e-6))
    mpmath.mp.dps = 30
    ref = float(30720 * mpmath.pi**5 * mpmath.zeta(7) * CODATA.c * mpmath.mpf(est.chi) ** 2
                / mpmath.mpf(est.lambda_T) ** 7)
    ok = (abs(est.lambda_T / 0.144 - 1) <= 0.02
          and 1e-12 / 3 <= est.gamma_R <= 3e-12
          and abs(est.gamma_R / ref - 1) <= 0.10)
    _report(8, ok, f"lambda_T = {est.lambda_T:.4f} m, Gamma_R = {est.gamma_R:.3e} /s, "
                   f"independent = {ref:.3e} /s")


def test_criterion_9_oracle():
    t0 = time.perf_counter()
    reports = verification_suite()
    dt = time.perf_counter() - t0
    failed = [r.quantity for r in reports if not r.passed]
    worst = max(r.relative_discrepancy / r.threshold for r in reports)
    _report(9, not failed and dt < 60,
            f"{len(reports)} reports, {len(failed)} failed, worst discrepancy/threshold = {worst:.2e}, {dt:.1f} s")


def test_criterion_10_exactness():
    p0 = p_poly(0).coefficients
    p1 = p_poly(1).coefficients
    ok = p0 == (Fraction(1),) and p1 == (Fraction(3, 4), 0, Fraction(-1, 2), 0, Fraction(1, 4))
    _report(10, ok, f"P_0 = {[str(c) for c in p0]}, P_1 = {[str(c) for c in p1]}")
