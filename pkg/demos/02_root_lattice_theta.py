"""Shifted theta series of ADE root lattices and their eta product forms."""

from etaforge import ade_data, strange_formula_residual, theta_series
from etaforge.rootsys import theta_eta_identity_residual, theta_eta_quotient

for tag in ("A2", "D5", "E6", "E8"):
    R = ade_data(tag)
    print(f"{tag}: d = {R.highest_root}, k = {R.k}, zeta = {[str(z) for z in R.zeta]}")
    # the leading exponent (zeta|zeta)/2k is fixed by the strange formula
    print(f"    leading exponent {R.minimal_exponent}, strange-formula residual {strange_formula_residual(tag)}")

# theta_D5 is an eta product; the lattice sum and the product agree term by term
R = ade_data("D5")
print(theta_series("D5", R.minimal_exponent + 6))
print("as eta product:", theta_eta_quotient("D5"))
print("residual zero:", theta_eta_identity_residual("D5", R.minimal_exponent + 40).is_zero())

# changing the polyhedral counts breaks the identity
print("with (E,F,V) = (4,2,4):", theta_eta_identity_residual("D5", 30, efv=(4, 2, 4)).is_zero())
