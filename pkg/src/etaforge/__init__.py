"""Exact q-series, eta quotients and orbifold Hilbert scheme partition functions."""

from .eta import EtaQuotient, cusp_orders, eta_quotient_expansion, eta_quotient_metadata
from .k3cases import (
    CaseRecord,
    CaseValidationError,
    assemble_global,
    eigenform_check,
    hecke_apply,
    load_cases,
    modularity_report,
    seed_cases,
)
from .lattice import EnumerationBudgetExceeded
from .orbifold import (
    cyclic_hilb_oracle,
    local_Z_eta,
    local_Z_mckay,
    local_Z_theta,
    nakajima_coefficient,
    nakajima_multivariate,
    nakajima_specialized,
)
from .qseries import NotInvertibleError, QSeries
from .refine import JacobiSeries, chi_y_series, hodge_series_Y, weak_jacobi_phi_m2_1, zbir_euler_consistency
from .rootsys import ade_data, strange_formula_residual, theta_eta_identity_residual, theta_series

__version__ = "0.1.0"

__all__ = [
    "CaseRecord",
    "CaseValidationError",
    "EnumerationBudgetExceeded",
    "EtaQuotient",
    "JacobiSeries",
    "NotInvertibleError",
    "QSeries",
    "ade_data",
    "assemble_global",
    "chi_y_series",
    "cusp_orders",
    "cyclic_hilb_oracle",
    "eigenform_check",
    "eta_quotient_expansion",
    "eta_quotient_metadata",
    "hecke_apply",
    "hodge_series_Y",
    "load_cases",
    "local_Z_eta",
    "local_Z_mckay",
    "local_Z_theta",
    "modularity_report",
    "nakajima_coefficient",
    "nakajima_multivariate",
    "nakajima_specialized",
    "seed_cases",
    "strange_formula_residual",
    "theta_eta_identity_residual",
    "theta_series",
    "weak_jacobi_phi_m2_1",
    "zbir_euler_consistency",
]
