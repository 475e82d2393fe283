"""chi_y genus, Hodge numbers and the birational formula's Euler shadow."""

from etaforge import chi_y_series, hodge_series_Y, seed_cases, weak_jacobi_phi_m2_1, zbir_euler_consistency

phi = weak_jacobi_phi_m2_1(3)
print("phi_{-2,1} =", phi.to_text())

trivial = next(c for c in seed_cases() if c.xiao == 0)
chi = chi_y_series(trivial, 3)
print("chi_y for Hilb^n(K3):", chi.to_text())
print("at y = 1:", chi.at_y1())

z2 = next(c for c in seed_cases() if c.xiao == 1)
print("Z/2 chi_y palindromic:", chi_y_series(z2, 10).is_palindromic())

h = hodge_series_Y(2)
print("Hodge numbers of Hilb^2(K3):", h.uv_coefficients(2))

print("Euler shadow of the birational formula:", all(zbir_euler_consistency(c, 50) for c in seed_cases()))
