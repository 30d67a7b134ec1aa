"""
The plasmonic contribution changes sign
=======================================

Splitting the Casimir energy over mode families gives
eta = eta_pl + eta_ph: a surface-plasmon part and a propagative
cavity-mode part.  The striking feature of this decomposition is that
eta_pl is *positive* (binding, attractive) only below L/lambda_P ~ 0.08;
beyond that it turns negative — repulsive — while the photonic part
overcompensates to keep the total attractive.
"""

import math

import numpy as np

from casimir_plasmons import compute_eta_breakdown, locate_sign_change

# ----------------------------------------------------------------------
# Sweep the decomposition through the sign change
# ----------------------------------------------------------------------

print("mode-resolved reduction factors")
print(f"{'L/lambda_P':>12} {'eta_total':>12} {'eta_pl':>12} {'eta_ph':>12} {'eta_ev':>12}")
for ratio in np.geomspace(0.02, 20.0, 10):
    b = compute_eta_breakdown(2.0 * math.pi * float(ratio))
    print(
        f"{ratio:12.4g} {b.eta_total:12.6f} {b.eta_pl:12.6f}"
        f" {b.eta_ph:12.6f} {b.eta_ev:12.6f}"
    )

# eta_ev, the evanescent-only part of the surface-mode contribution, stays
# positive at every separation: the sign change of eta_pl is driven entirely
# by its propagative section.  The closure eta_pl + eta_ph = eta_total holds
# to machine precision by construction and is continuously verified by the
# library's error bookkeeping.

# ----------------------------------------------------------------------
# Locate the crossing precisely
# ----------------------------------------------------------------------

crossing = locate_sign_change()
print(f"\neta_pl crosses zero at L/lambda_P = {crossing:.10f}")

check = compute_eta_breakdown(2.0 * math.pi * crossing)
print(f"eta_pl there                      = {check.eta_pl:+.3e}")

# At large separations the surface modes dominate in magnitude even though
# the total stays small: |eta_pl| grows like sqrt(Omega_P) while eta -> 1.
big = compute_eta_breakdown(1e4)
print(f"\nat Omega_P = 1e4: eta = {big.eta_total:.6f}, eta_pl = {big.eta_pl:.1f}")
print(f"|eta_pl| / eta = {abs(big.eta_pl) / big.eta_total:.0f}")
