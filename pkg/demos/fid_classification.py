"""
Free infinite divisibility and the Levy triplet
===============================================

Whether a family member is freely infinitely divisible comes down to a
sign condition on Im phi over the open upper half-plane.  A grid scan
either certifies no violation or produces a witness point, and the
theory side has an exact classification to compare against.  For the
divisible members the inversion machinery extracts the free Levy
triplet (gamma, a, nu).
"""

import numpy as np

from freeconv import (FamilyParams, check_fid_grid, find_E_zero,
                      levy_beta_closed, levy_cubic_closed, levy_triplet,
                      r0_threshold, tau_total_mass)

cases = [
    FamilyParams(1.0, -1.0, 2.0),
    FamilyParams(1.0, 3j, 3.0),
    FamilyParams(0.5, -1.0, 2.0),
    FamilyParams(1.0, 3 * np.exp(1j * np.pi / 4), 3.0),
    FamilyParams(1.0, -3.0, 3.0),
]

print("grid scan vs theory")
for p in cases:
    rep = check_fid_grid(p)
    tag = "" if rep.witness is None else f"  witness near {rep.witness:.4f}"
    print(f"  alpha={p.alpha} s={p.s} r={p.r}: scan={rep.verdict}, "
          f"theory={rep.theory}{tag}")

# the boundary of the divisible region: r0(alpha, s) for positive s
print()
print("thresholds r0 along the positive axis")
for alpha in (1.5, 2.0):
    print(f"  alpha={alpha}, s=1: r0 = {r0_threshold(alpha, 1.0):.6f}")

# E-function zeros flag the borderline failures
z0 = find_E_zero(1.0, -1.0, 3.0)
print()
print(f"zero of E for (1, -1, 3): {z0}")
print(f"zero of E for (1, -1, 2): {find_E_zero(1.0, -1.0, 2.0)}")

# Levy triplet for a divisible member with a cubic phi
print()
print("Levy triplet for alpha=1, s=3i, r=3")
p = FamilyParams(1.0, 3j, 3.0)
trip = levy_triplet(p, -3.0, 3.0, 41)
print(f"  gamma = {trip.gamma:.10f}")
print(f"  a     = {trip.a:.10f}")
mid = len(trip.nu.xs) // 2 + 5
x = trip.nu.xs[mid]
print(f"  nu({x:.3f}) = {trip.nu.values[mid]:.8f} "
      f"(closed {levy_cubic_closed(x):.8f})")
print(f"  tau total mass = {tau_total_mass(p):.10f} "
      f"(exact 4/7 = {4 / 7:.10f})")

# the beta members have a one-line Levy density
print()
print("closed Levy density for the beta member r=1.5 at x=1/3:",
      f"{levy_beta_closed(1.5, 1.0 / 3.0):.10f}")
