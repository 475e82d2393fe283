"""Four constructions of the local series Z_Delta, and the monomial-ideal count."""

from etaforge import (
    cyclic_hilb_oracle,
    local_Z_eta,
    local_Z_mckay,
    local_Z_theta,
    nakajima_multivariate,
    nakajima_specialized,
)
from etaforge.orbifold import local_eta_quotient

tag, order = "E7", 12
print("Z_E7 =", local_eta_quotient(tag))
routes = {
    "eta product": local_Z_eta(tag, order),
    "theta / eta(k tau)^(n+1)": local_Z_theta(tag, order),
    "root lattice sum": nakajima_specialized(tag, order),
    "C^2/{+-1} recombination": local_Z_mckay(tag, order),
}
for name, series in routes.items():
    print(f"{name:>26}: {series}")

# type A collapses to 1/eta for every n
print(nakajima_specialized("A5", 5))

# counting Z/3-invariant monomial ideals by colour reproduces the 3-variable series
oracle = cyclic_hilb_oracle(3, 9)
print("oracle == orbifold series:", oracle == nakajima_multivariate("A2", 9))
print("ideals with two boxes of each colour:", oracle.coefficient((2, 2, 2)))
