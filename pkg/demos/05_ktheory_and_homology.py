"""From the induced map on K0 to the K-groups, with the homology cross-check.

Assembles id - beta_hat_* from the transport formulas, solves the exact
sequence through the Smith normal form, compares against the shipped display
fixtures, and confirms K0 = Z + H1 of the corresponding flat space group.
"""
from ncbieberbach.ktheory import (
    beta_star_matrix,
    bieberbach_h1,
    compare_with_k0,
    fixture_comparison,
    pv_solve,
    smith_normal_form,
    verify_beta_star,
)

for family in ("B2", "B3", "B4", "B6"):
    data = beta_star_matrix(family, 1)
    k0, k1 = pv_solve(data)
    snf = smith_normal_form(data.matrix)
    print(f"{family}: K0 = {k0},  K1 = {k1},  divisors {snf.diagonal}")

print()
print("epsilon independence for the order-2 family:",
      pv_solve(beta_star_matrix("B2", 1)) == pv_solve(beta_star_matrix("B2", -1)))

print()
print("display fixtures:")
for family in ("B2", "B3", "B4", "B6"):
    print(f"  {family}: {fixture_comparison(family, 1)}")

print()
print("three-layer consistency for the order-2 family:")
report = verify_beta_star("B2", 1)
for check in report.checks:
    print(f"  {check.name}: {'pass' if check.ok else 'FAIL'}")

print()
print("first homology of the space groups:")
for family in ("B2", "B3", "B4", "B6"):
    print(f"  {family}: H1 = {bieberbach_h1(family)},",
          f"K0 == Z + H1: {compare_with_k0(family)}")
