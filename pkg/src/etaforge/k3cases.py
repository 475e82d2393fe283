"""
Symplectic finite group actions on K3 surfaces and their global series.

A case is described by the group order ``k`` and the ADE types of the
singular points of ``X/G``.  From those,

* ``a = 24/k - sum 1/k_i`` is the Euler characteristic of the smooth part of
  ``X/G`` and must be a nonnegative integer;
* ``24 = 24/k + sum (n_i + 1 - 1/k_i)`` (Euler characteristic of the minimal
  resolution) must hold;
* ``Z_{X,G}(q) = eta(k tau)^(-a) prod_i Z_{Delta_i}(k tau / k_i)``.

Case files hold one record per line, ``xiao;group;k;sing`` with ``sing`` a
comma-separated list of ``mult*Type`` tokens, ``#`` starting a comment.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import gcd
from typing import Iterable, Optional, Sequence

from .eta import (
    EtaQuotient,
    cusp_label,
    cusp_orders,
    eta_quotient_expansion,
    eta_quotient_metadata,
    gamma0_index,
    kronecker,
)
from .orbifold import local_eta_quotient, nakajima_specialized
from .qseries import QSeries, Rational
from .rootsys import ade_data, parse_tag, theta_series

__all__ = [
    "CaseRecord",
    "CaseValidationError",
    "Check",
    "CaseReport",
    "EigenReport",
    "parse_case_line",
    "load_cases",
    "seed_cases",
    "find_case",
    "assemble_global",
    "global_series",
    "stratification_series",
    "theta_product_series",
    "modularity_report",
    "hecke_apply",
    "eigenform_check",
    "eigenform_check_series",
]


class CaseValidationError(ValueError):
    def __init__(self, invariant: str, detail: str, line: Optional[int] = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}record rejected, invariant '{invariant}' fails: {detail}")
        self.invariant = invariant
        self.line = line


@dataclass(frozen=True)
class CaseRecord:
    xiao: int
    group_label: str
    k: int
    singularities: tuple[str, ...]

    @property
    def local_orders(self) -> tuple[int, ...]:
        return tuple(ade_data(t).k for t in self.singularities)

    @property
    def r(self) -> int:
        return len(self.singularities)

    @property
    def a_exact(self) -> Fraction:
        return Fraction(24, self.k) - sum((Fraction(1, ki) for ki in self.local_orders), Fraction(0))

    @property
    def a(self) -> int:
        return int(self.a_exact)

    @property
    def euler_quotient(self) -> int:
        """``e(X/G) = a + r``."""
        return self.a + self.r

    def singularity_string(self) -> str:
        counts: dict[str, int] = {}
        for t in self.singularities:
            counts[t] = counts.get(t, 0) + 1
        return ",".join(t if c == 1 else f"{c}*{t}" for t, c in counts.items())

    def to_line(self) -> str:
        return f"{self.xiao};{self.group_label};{self.k};{self.singularity_string()}"


def validate_case(case: CaseRecord, line: Optional[int] = None) -> CaseRecord:
    if not 0 <= case.xiao <= 81:
        raise CaseValidationError("xiao number in 0..81", str(case.xiao), line)
    if case.k < 1:
        raise CaseValidationError("k >= 1", str(case.k), line)
    for t, ki in zip(case.singularities, case.local_orders):
        if case.k % ki:
            raise CaseValidationError("k_i divides k", f"{t} has k_i = {ki}, k = {case.k}", line)
    a = case.a_exact
    if a.denominator != 1 or a < 0:
        raise CaseValidationError("a = 24/k - sum 1/k_i is a nonnegative integer", f"a = {a}", line)
    euler = Fraction(24, case.k) + sum(
        (ade_data(t).rank + 1 - Fraction(1, ki) for t, ki in zip(case.singularities, case.local_orders)),
        Fraction(0),
    )
    if euler != 24:
        raise CaseValidationError("24 = 24/k + sum(n_i + 1 - 1/k_i)", f"right side is {euler}", line)
    return case


def parse_case_line(text: str, line: Optional[int] = None) -> CaseRecord:
    fields = [f.strip() for f in text.split(";")]
    if len(fields) != 4:
        raise CaseValidationError("format xiao;group;k;sing", repr(text), line)
    xiao, group, k, sing = fields
    tags: list[str] = []
    for tok in filter(None, (t.strip() for t in sing.split(","))):
        mult, star, t = tok.partition("*")
        if not star:
            mult, t = "1", tok
        try:
            parse_tag(t)
        except ValueError as exc:
            raise CaseValidationError("valid ADE type", str(exc), line) from None
        tags.extend([t.strip()] * int(mult))
    try:
        rec = CaseRecord(int(xiao), group, int(k), tuple(tags))
    except ValueError as exc:
        raise CaseValidationError("integer xiao number and k", str(exc), line) from None
    return validate_case(rec, line)


def load_cases(text: str) -> list[CaseRecord]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append(parse_case_line(body, i))
    return out


def seed_cases() -> list[CaseRecord]:
    text = resources.files("etaforge").joinpath("data/seed_cases.txt").read_text()
    return load_cases(text)


def find_case(cases: Iterable[CaseRecord], xiao: int) -> CaseRecord:
    for c in cases:
        if c.xiao == xiao:
            return c
    raise KeyError(f"no case with Xiao number {xiao}")


def assemble_global(case: CaseRecord) -> EtaQuotient:
    """Eta quotient of ``Z_{X,G}``; its inverse is the cusp form."""
    result = EtaQuotient(((case.k, -case.a),))
    for t, ki in zip(case.singularities, case.local_orders):
        result = result * local_eta_quotient(t).rescale(Fraction(case.k, ki))
    for m in result.multipliers():
        if case.k % m:
            raise AssertionError(f"internal: multiplier {m} of {result} does not divide k = {case.k}")
    return result


def global_series(case: CaseRecord, order: Rational) -> QSeries:
    """q-expansion of ``Z_{X,G}`` from the eta quotient."""
    return eta_quotient_expansion(assemble_global(case), order)


def stratification_series(case: CaseRecord, order: Rational) -> QSeries:
    """``Z_{X,G}`` from the orbit-type stratification, using lattice-sum local series.

    ``sum_n e(Hilb^n(X)^G) q^n = prod_m (1 - q^{km})^{-a} prod_i L_i(q^{k/k_i})``
    where ``L_i(q) = q^{1/24} Z_{Delta_i}(q)``.
    """
    order = Fraction(order)
    top = order + 1
    n_terms = int(-((-top) // 1))
    open_part = eta_quotient_expansion(EtaQuotient(((1, -case.a),)), n_terms - Fraction(case.a, 24))
    total = open_part.shift(Fraction(case.a, 24)).rescale(case.k).truncate(top)
    for t, ki in zip(case.singularities, case.local_orders):
        s = Fraction(case.k, ki)
        local = nakajima_specialized(t, top / s).shift(Fraction(1, 24))
        total = total * local.rescale(s)
    return total.shift(-1).truncate(order)


def theta_product_series(case: CaseRecord, order: Rational, budget: Optional[int] = None) -> QSeries:
    """``Z_{X,G}`` as ``Delta(k tau)^(-1) prod_i theta_{Delta_i}(k tau / k_i)``.

    The eta factors ``eta(k tau)^(-a)`` and ``eta(k tau)^(-(n_i+1))`` of the local
    theta forms combine into ``eta(k tau)^(-24)`` by the Euler relation.
    """
    order = Fraction(order)
    inv_delta = eta_quotient_expansion(EtaQuotient(((1, -24),)), order / case.k + 1).rescale(case.k)
    theta_val = sum((Fraction(case.k, ki) * ade_data(t).minimal_exponent
                     for t, ki in zip(case.singularities, case.local_orders)), Fraction(0))
    total = inv_delta
    for t, ki in zip(case.singularities, case.local_orders):
        s = Fraction(case.k, ki)
        # each theta factor only needs precision relative to the rest of the product
        need = (order + case.k - theta_val) / s + ade_data(t).minimal_exponent
        total = total * theta_series(t, need, budget).rescale(s)
    return total.truncate(order)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class CaseReport:
    xiao: int
    group: str
    eta_quotient: str
    weight: Fraction
    level: int
    valuation: Fraction
    cusp_orders: list[tuple[str, Fraction]]
    checks: list[Check] = field(default_factory=list)
    expansion: Optional[QSeries] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        d = {
            "xiao": self.xiao,
            "group": self.group,
            "eta_quotient": self.eta_quotient,
            "weight": str(self.weight),
            "level": self.level,
            "valuation": str(self.valuation),
            "cusp_orders": [[c, str(o)] for c, o in self.cusp_orders],
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.expansion is not None:
            d["expansion"] = self.expansion.to_dict()
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def modularity_report(case: CaseRecord, order: Rational = 50, strat_order: Optional[Rational] = None) -> CaseReport:
    """Weight, cusp-form and level checks for ``Z_{X,G}^{-1}`` at level ``k``."""
    order = Fraction(order)
    inv = assemble_global(case).inverse()
    N = case.k
    meta = eta_quotient_metadata(inv, N)
    f = eta_quotient_expansion(inv, order)
    checks = [
        Check("weight = e(X/G)/2", meta.weight == Fraction(case.euler_quotient, 2),
              f"weight {meta.weight}, e(X/G) = {case.euler_quotient}"),
        Check("cusp form: valuation 1 at i∞", f.valuation() == 1 and f.leading_coefficient() == 1,
              f"valuation {f.valuation()}, leading coefficient {f.leading_coefficient()}"),
        Check("eta multipliers divide k", meta.multipliers_divide_level, f"multipliers {inv.multipliers()}, k = {N}"),
    ]
    if meta.integer_weight:
        checks.append(Check("eta congruences mod 24 at level k", meta.congruences_hold,
                            f"sum m r = {meta.sum_m_r}, sum (N/m) r = {meta.sum_Nover_m_r}"))
    else:
        checks.append(Check("eta congruences mod 24 at level k", True,
                            "informational only: half-integral weight carries a multiplier system"))
    cusps = cusp_orders(inv, N)
    by_label = {cusp_label(c, N): o for c, o in cusps}
    at_inf = by_label["i∞"]
    at_zero = by_label.get("0", at_inf)  # level 1 has a single cusp
    checks.append(Check("order 1 at cusps i∞ and 0", at_inf == 1 and at_zero == 1,
                        f"i∞: {at_inf}, 0: {at_zero}"))
    holo = all(o >= 0 for _, o in cusps)
    total = sum((o for _, o in cusps), Fraction(0))
    if meta.integer_weight and holo:
        expected = meta.weight * gamma0_index(N) / 12
        checks.append(Check("total cusp order = weight*index/12", total == expected,
                            f"total {total}, expected {expected}"))
    else:
        checks.append(Check("total cusp order = weight*index/12", True,
                            f"informational: holomorphic={holo}, total {total}"))
    so = order if strat_order is None else Fraction(strat_order)
    z = global_series(case, so)
    strat = stratification_series(case, so)
    checks.append(Check("stratification product = eta quotient", z == strat, f"compared below q^{so}"))
    return CaseReport(
        xiao=case.xiao,
        group=case.group_label,
        eta_quotient=str(inv),
        weight=meta.weight,
        level=N,
        valuation=f.valuation(),
        cusp_orders=[(cusp_label(c, N), o) for c, o in cusps],
        checks=checks,
        expansion=f,
    )


def _integer_coefficients(f: QSeries) -> dict[int, int]:
    out = {}
    for e, c in f.exponents().items():
        if e.denominator != 1:
            raise ValueError(f"Hecke operators need integer exponents; found q^({e})")
        out[int(e)] = c
    return out


def hecke_apply(f: QSeries, p: int, weight: int, character_discriminant: int) -> QSeries:
    """``(T_p f)(n) = a(pn) + chi(p) p^(w-1) a(n/p)`` with ``chi`` the Kronecker character."""
    coeffs = _integer_coefficients(f)
    if coeffs and min(coeffs) < 1:
        raise ValueError("Hecke operators here act on cusp forms supported on exponents >= 1")
    if weight < 1:
        raise ValueError("weight must be a positive integer")
    new_order = int(f.order // p)
    chi = kronecker(character_discriminant, p)
    out = {}
    for n in range(1, new_order):
        c = coeffs.get(p * n, 0)
        if n % p == 0:
            c += chi * p ** (weight - 1) * coeffs.get(n // p, 0)
        if c:
            out[n] = c
    return QSeries(out, 1, new_order)


@dataclass
class EigenReport:
    xiao: Optional[int]
    supported: bool
    weight: Fraction
    character_discriminant: Optional[int]
    eigenvalues: dict[int, int] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.supported and all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "xiao": self.xiao,
            "supported": self.supported,
            "weight": str(self.weight),
            "character_discriminant": self.character_discriminant,
            "eigenvalues": {str(p): str(a) for p, a in self.eigenvalues.items()},
            "checks": [c.to_dict() for c in self.checks],
        }


def eigenform_check_series(f: QSeries, level: int, weight: Fraction, character_discriminant: Optional[int],
                           primes: Sequence[int], xiao: Optional[int] = None) -> EigenReport:
    weight = Fraction(weight)
    rep = EigenReport(xiao, weight.denominator == 1 and character_discriminant is not None, weight,
                      character_discriminant)
    if not rep.supported:
        rep.checks.append(Check("integer weight", False, "half-integral weight is unsupported"))
        return rep
    w = int(weight)
    coeffs = _integer_coefficients(f)
    rep.checks.append(Check("normalized: a(1) = 1", coeffs.get(1, 0) == 1, f"a(1) = {coeffs.get(1, 0)}"))
    for p in primes:
        if level % p == 0:
            rep.checks.append(Check(f"T_{p} eigenvector", True, f"skipped: {p} divides the level {level}"))
            continue
        ap = coeffs.get(p, 0)
        rep.eigenvalues[p] = ap
        tp = hecke_apply(f, p, w, character_discriminant)
        ok = tp == (f * ap).truncate(tp.order)
        rep.checks.append(Check(f"T_{p} eigenvector", ok, f"a_{p} = {ap}, compared below q^{tp.order}"))
    # multiplicativity a(mn) = a(m) a(n) for coprime m, n >= 2 with mn < order
    top = int(-((-f.order) // 1))
    bad = []
    for m in range(2, top):
        for n in range(m + 1, top):
            if m * n >= f.order:
                break
            if gcd(m, n) == 1 and coeffs.get(m * n, 0) != coeffs.get(m, 0) * coeffs.get(n, 0):
                bad.append((m, n))
    rep.checks.append(Check("multiplicative on coprime indices", not bad,
                            f"first failures {bad[:3]}" if bad else f"all coprime m*n < {f.order}"))
    return rep


def eigenform_check(case: CaseRecord, primes: Sequence[int], order: Rational = 100) -> EigenReport:
    inv = assemble_global(case).inverse()
    meta = eta_quotient_metadata(inv, case.k)
    f = eta_quotient_expansion(inv, Fraction(order))
    return eigenform_check_series(f, case.k, meta.weight, meta.character_discriminant, primes, case.xiao)
