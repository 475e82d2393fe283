"""Global series of K3 surfaces with a symplectic group action."""

from etaforge import assemble_global, load_cases, modularity_report, seed_cases
from etaforge.k3cases import stratification_series, theta_product_series

for case in seed_cases():
    inv = assemble_global(case).inverse()
    print(f"{case.xiao:>3} {case.group_label:<10} k={case.k:<3} {case.singularity_string() or '-':<16} 1/Z = {inv}")

# the Z/4 case in detail
case = next(c for c in seed_cases() if c.xiao == 4)
rep = modularity_report(case, 10)
for check in rep.checks:
    print(f"  [{'PASS' if check.passed else 'FAIL'}] {check.name}: {check.detail}")
print(rep.expansion)

# three constructions of Z agree: eta quotient, stratification, theta product
print(stratification_series(case, 8) == theta_product_series(case, 8))

# user-supplied records are validated; this one violates the Euler relations
try:
    load_cases("11;Z/2xZ/4;8;4*A3,6*A1")
except ValueError as exc:
    print(exc)
