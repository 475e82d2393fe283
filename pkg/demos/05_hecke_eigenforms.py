"""Hecke operators on the cusp forms 1/Z_{X,G}."""

from etaforge import eigenform_check, eta_quotient_expansion, hecke_apply, seed_cases
from etaforge.eta import EtaQuotient
from etaforge.k3cases import eigenform_check_series

cases = {c.xiao: c for c in seed_cases()}

# Z/7: eta^3 eta(7 tau)^3, weight 3, character (-7/.)
f = eta_quotient_expansion(EtaQuotient.parse("1^3 7^3"), 60)
t2 = hecke_apply(f, 2, 3, -7)
print("a_2 =", f.coefficient(2), " T_2 f == a_2 f:", t2 == (f * f.coefficient(2)).truncate(t2.order))

for xiao in (1, 2, 3, 5, 8, 15):
    rep = eigenform_check(cases[xiao], [2, 3, 5, 7, 11, 13], 100)
    print(f"Xiao {xiao:>2}: eigenvalues {rep.eigenvalues}  pass={rep.passed}")

# bump one coefficient and the eigenvector test fails
bad = f + f.monomial(2, 1, f.order)
rep = eigenform_check_series(bad, 7, 3, -7, [2])
print([(c.name, c.passed) for c in rep.checks])
