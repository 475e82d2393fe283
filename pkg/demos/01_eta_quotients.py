"""Eta quotients: expansions, weight and level bookkeeping, cusp orders."""

from etaforge import EtaQuotient, cusp_orders, eta_quotient_expansion, eta_quotient_metadata
from etaforge.eta import cusp_label, gamma0_index

# the discriminant form Delta = eta^24
delta = EtaQuotient.parse("1^24")
print(eta_quotient_expansion(delta, 6))  # Ramanujan tau: 1, -24, 252, -1472, 4830

# a weight 5 form of level 4 with a quadratic character
f = EtaQuotient.parse("1^4 2^2 4^4")
meta = eta_quotient_metadata(f, 4)
print("weight", meta.weight, "character", meta.character_label(), "congruences", meta.congruences_hold)

# orders at the cusps of Gamma_0(4); 1/2 has width 1, so its order can be fractional
for cusp, order in cusp_orders(f, 4):
    print(f"  {cusp_label(cusp, 4):>3}: {order}")
total = sum(o for _, o in cusp_orders(f, 4))
print("total", total, "= weight * index / 12 =", meta.weight * gamma0_index(4) / 12)

# quotients multiply and rescale formally
g = (EtaQuotient.parse("1^-1") ** 8).rescale(2) * EtaQuotient.parse("1^-8")
print(g, "inverted:", g.inverse())
