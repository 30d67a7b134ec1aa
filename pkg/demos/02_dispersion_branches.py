"""
Dispersion branches of the mirror-mirror cavity
===============================================

Two plasma mirrors support two coupled surface-plasmon branches (the
symmetric/antisymmetric splitting of the single-interface mode) plus a
ladder of propagative cavity resonances.  All frequencies are scaled by
c/L and wavevectors by 1/L, so the only parameter is
Omega_P = 2 pi L / lambda_P.
"""

import math

from casimir_plasmons import (
    BranchId,
    BranchKind,
    CoupledBranch,
    Polarization,
    branch_constants,
    default_dispersion_grid,
    invert_branch,
    photonic_mode,
    sample_dispersion,
)

OMEGA_P = 2.0 * math.pi * 1.5  # separation of 1.5 plasma wavelengths

# ----------------------------------------------------------------------
# Branch constants: where the plus branch crosses the light cone
# ----------------------------------------------------------------------

constants = branch_constants(OMEGA_P)
print(f"Omega_P                 = {OMEGA_P:.6f}")
print(f"light-cone crossing k_P = {constants.k_P:.6f}")
print(f"plus-branch start (K=0) = {constants.y_plus:.6f}")
print(f"asymptote Omega_P/sqrt2 = {OMEGA_P / math.sqrt(2):.6f}")

# ----------------------------------------------------------------------
# The coupled surface branches: minus <= reference <= plus everywhere
# ----------------------------------------------------------------------

print("\nsurface branches (TM)")
print(f"{'K':>10} {'Omega_minus':>12} {'Omega_0':>12} {'Omega_plus':>12} {'plus sector':>12}")
branches = [
    BranchId(BranchKind.PLASMONIC_PLUS, Polarization.TM),
    BranchId(BranchKind.PLASMONIC_MINUS, Polarization.TM),
    BranchId(BranchKind.INTERFACE_REFERENCE, Polarization.TM),
]
grid = default_dispersion_grid(OMEGA_P, points=12)
sampled = dict(sample_dispersion(OMEGA_P, grid, branches))
plus, minus, zero = (sampled[b] for b in branches)
for p, m, z in zip(plus, minus, zero):
    print(
        f"{p.K:10.4f} {m.Omega:12.6f} {z.Omega:12.6f} {p.Omega:12.6f}"
        f" {p.sector.value:>12}"
    )

# The plus branch starts above the light cone (propagative), crosses it at
# K = k_P, and becomes evanescent; the minus and reference branches are
# evanescent at every wavevector.  At large K all three merge into the
# single-interface surface plasmon at Omega_P/sqrt(2).

# ----------------------------------------------------------------------
# Propagative cavity resonances and their connection to the plus branch
# ----------------------------------------------------------------------

print("\nfirst TM cavity resonance vs the plus branch (above the cone)")
print(f"{'K':>10} {'photonic m=1':>14} {'plus branch':>14}")
for frac in (0.2, 0.5, 0.8):
    big_k = frac * constants.k_P
    guided = photonic_mode(Polarization.TM, 1, big_k, OMEGA_P)
    surface = invert_branch(CoupledBranch.PLUS, big_k, OMEGA_P)
    print(f"{big_k:10.4f} {guided:14.8f} {surface:14.8f}")

# Above the light cone the lowest TM resonance and the plus branch are the
# same mode: the table's last two columns agree to full precision.
