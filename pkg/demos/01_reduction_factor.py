"""
Casimir energy between plasma mirrors: the reduction factor
===========================================================

The Casimir energy of two ideal mirrors at distance L is
E_ideal = -hbar c pi^2 A / (720 L^3).  Real metallic mirrors, described
here by the plasma model, attract less strongly; the ratio
eta = E / E_ideal is the *reduction factor*.  This script sweeps the
separation (in units of the plasma wavelength lambda_P) and prints eta
together with the physical energy for gold-like mirrors.
"""

import math

import numpy as np

from casimir_plasmons import (
    PhysicalSetup,
    PlasmaMirror,
    casimir_ideal_energy,
    energy_breakdown,
    eta_total,
)

# ----------------------------------------------------------------------
# A dimensionless sweep: eta depends only on Omega_P = 2 pi L / lambda_P
# ----------------------------------------------------------------------

print("reduction factor eta vs separation")
print(f"{'L/lambda_P':>12} {'Omega_P':>12} {'eta':>14}")
for ratio in np.geomspace(0.01, 100.0, 9):
    omega_p = 2.0 * math.pi * ratio
    print(f"{ratio:12.4g} {omega_p:12.4g} {eta_total(omega_p):14.8f}")

# At short distance eta collapses to a linear law, eta ~ 1.7895 * L/lambda_P,
# because only the coupled surface modes contribute; at large distance it
# saturates at 1 (the ideal-mirror limit).

# ----------------------------------------------------------------------
# Physical units: gold-like mirrors (lambda_P = 137 nm), 1 cm^2 area
# ----------------------------------------------------------------------

mirror = PlasmaMirror.from_plasma_wavelength(137e-9)
print("\nphysical energies for lambda_P = 137 nm, A = 1 cm^2")
print(f"{'L (nm)':>8} {'E_ideal (J)':>14} {'E (J)':>14} {'eta':>10}")
for gap_nm in (50, 137, 500, 2000):
    setup = PhysicalSetup(mirror=mirror, L=gap_nm * 1e-9, A=1e-4)
    result = energy_breakdown(setup)
    ideal = casimir_ideal_energy(setup)
    print(f"{gap_nm:8d} {ideal:14.4e} {result.energy:14.4e} {result.eta:10.6f}")
