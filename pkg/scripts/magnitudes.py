#!/usr/bin/env python3
"""Order-of-magnitude numbers for an osmium experiment at 10 Hz and 100 mK."""
import math

from snspec.constants import CODATA
from snspec.experiment import ParticleGeometry, mass_for_alpha, rayleigh_rate, sphere_diameter
from snspec.materials import default_database
from snspec.spectrum import delta_omega_sn, g_coefficient

os_ = default_database()["osmium"]
w = 2 * math.pi * 10

print("delta_omega_SN at omega0 = 1 rad/s")
for m in default_database():
    print(f"  {m.name:9s} {delta_omega_sn(m, 1.0):.4g} 1/s")

M = mass_for_alpha(5, w, os_.sigma)
print(f"\nalpha = 5 at 10 Hz needs M = {M / CODATA.amu:.3g} amu")
M = 1e15 * CODATA.amu
print(f"1e15 amu of osmium is a sphere of {sphere_diameter(M, os_.density) * 1e6:.2f} um")

alpha = 2 * os_.sigma * math.sqrt(M * w / CODATA.hbar)
gs = [g_coefficient(n, n + 1, alpha) for n in range(13)]
split = max(a - b for a, b in zip(gs, gs[1:])) * delta_omega_sn(os_, w) / (2 * math.pi)
print(f"alpha = {alpha:.2f}, largest adjacent line splitting {split * 1e3:.3f} mHz")

for name, geom in [("3 um x 1 um disc", ParticleGeometry.disc(3e-6, 1e-6)),
                   ("1 um radius sphere", ParticleGeometry.sphere(1e-6))]:
    est = rayleigh_rate(0.1, geom)
    print(f"{name}: lambda_T = {est.lambda_T:.3f} m, Gamma_R = {est.gamma_R:.2e} 1/s "
          f"(rounded prefactor {est.gamma_R_rounded:.2e})")
