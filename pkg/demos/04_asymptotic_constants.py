"""
Asymptotic regimes and their universal constants
================================================

Three constants summarise the limits of the mode-resolved decomposition:

* ``alpha  ~ 1.193``  — short distance: every reduction factor collapses to
  the same linear law 1.5 * alpha * (L/lambda_P);
* ``gamma  ~ 29.752`` — large distance: eta_pl ~ -gamma * sqrt(Omega_P);
* ``beta_ev ~ 1.624`` — large distance: eta_ev ~ +beta_ev * sqrt(Omega_P).

This script computes all three from scratch and shows the fits against
freshly sampled data.
"""

import math

from casimir_plasmons import (
    eta_plasmonic,
    eta_evanescent,
    fit_beta_ev,
    fit_gamma,
    short_distance_alpha,
)

# ----------------------------------------------------------------------
# Short distance: a single parameter-free integral
# ----------------------------------------------------------------------

alpha = short_distance_alpha()
print(f"alpha = {alpha:.9f}   (expected 1.193)")

ratio = 1e-3
slope = eta_plasmonic(2.0 * math.pi * ratio) / ratio
print(f"measured eta_pl slope at L/lambda_P={ratio:g}: {slope:.6f}")
print(f"predicted 1.5*alpha:                         {1.5 * alpha:.6f}")

# ----------------------------------------------------------------------
# Large distance: square-root growth of the surface-mode parts
# ----------------------------------------------------------------------

gamma = fit_gamma()
beta = fit_beta_ev()
print(f"\ngamma   = {gamma.value:.6f}  (expected 29.752,"
      f" fit residual {gamma.fit.relative_residual:.2e})")
print(f"beta_ev = {beta.value:.6f}   (expected 1.62399,"
      f" fit residual {beta.fit.relative_residual:.2e})")

print("\nfit window samples")
print(f"{'Omega_P':>10} {'eta_pl':>14} {'-gamma*sqrt':>14} {'eta_ev':>12} {'beta*sqrt':>12}")
for omega_p, value in gamma.samples:
    root = math.sqrt(omega_p)
    ev = eta_evanescent(omega_p)
    print(
        f"{omega_p:10.0f} {value:14.2f} {-gamma.value * root:14.2f}"
        f" {ev:12.2f} {beta.value * root:12.2f}"
    )

# The residual columns differ by the fitted O(1) offsets; the square-root
# coefficients themselves are stable at the 0.1% level against widening the
# fit window by an extra decade on either side.
