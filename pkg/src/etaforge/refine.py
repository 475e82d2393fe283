"""
Refinements of the Euler-characteristic series.

Coefficients here are (Laurent) polynomials rather than integers:

* :class:`JacobiSeries` -- q-series whose coefficients are Laurent polynomials
  in ``y``; used for ``phi_{-2,1}`` and the chi_y-genus series;
* :class:`HodgeSeries` -- t-series whose coefficients are polynomials in
  ``u, v``; used for the Hodge specialization of the motivic series of a K3.

A polynomial is a dict from exponent tuples to nonzero integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping

from .eta import EtaQuotient, eta_quotient_expansion
from .k3cases import CaseRecord, global_series
from .qseries import QSeries, Rational

__all__ = [
    "Poly",
    "JacobiSeries",
    "HodgeSeries",
    "K3_HODGE",
    "weak_jacobi_phi_m2_1",
    "psi_product",
    "chi_y_series",
    "hodge_series_Y",
    "zbir_euler_consistency",
]

Poly = dict  # {exponent tuple: int}

# h^{p,q}(K3)
K3_HODGE = {(0, 0): 1, (2, 0): 1, (0, 2): 1, (1, 1): 20, (2, 2): 1}


def _padd(a: Mapping, b: Mapping, sign: int = 1) -> Poly:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(a: Mapping, b: Mapping) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def _pscale(a: Mapping, s: int) -> Poly:
    return {m: c * s for m, c in a.items()} if s else {}


def _pformat(p: Mapping, names: tuple[str, ...]) -> str:
    if not p:
        return "0"
    parts = []
    for m, c in sorted(p.items()):
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class _PolySeries:
    """Truncated series in one variable with polynomial coefficients."""

    nvars: int
    terms: Mapping[Fraction, Poly]
    order: Fraction

    def __post_init__(self):
        order = Fraction(self.order)
        clean = {}
        for e, p in self.terms.items():
            e = Fraction(e)
            p = {tuple(m): c for m, c in p.items() if c}
            if p and e < order:
                if any(len(m) != self.nvars for m in p):
                    raise ValueError(f"monomials must have {self.nvars} exponents")
                clean[e] = p
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def coefficient(self, e: Rational) -> Poly:
        e = Fraction(e)
        if e >= self.order:
            raise ValueError(f"coefficient of {e} is beyond the truncation order {self.order}")
        return dict(self.terms.get(e, {}))

    def valuation(self) -> Fraction:
        return next(iter(self.terms), self.order)

    def _same(self, other: "_PolySeries"):
        if type(other) is not type(self) or other.nvars != self.nvars:
            raise TypeError("incompatible series")

    def __add__(self, other):
        self._same(other)
        order = min(self.order, other.order)
        out = dict(self.terms)
        for e, p in other.terms.items():
            out[e] = _padd(out.get(e, {}), p)
        return type(self)(self.nvars, out, order)

    def __sub__(self, other):
        self._same(other)
        return self + type(self)(other.nvars, {e: _pscale(p, -1) for e, p in other.terms.items()}, other.order)

    def __mul__(self, other):
        self._same(other)
        order = min(self.order + other.valuation(), other.order + self.valuation())
        out: dict = {}
        for ea, pa in self.terms.items():
            for eb, pb in other.terms.items():
                e = ea + eb
                if e >= order:
                    break
                out[e] = _padd(out.get(e, {}), _pmul(pa, pb))
        return type(self)(self.nvars, out, order)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.nvars, self.order, self.terms) == (other.nvars, other.order, other.terms)

    def truncate(self, order: Rational):
        return type(self)(self.nvars, self.terms, min(Fraction(order), self.order))

    def rescale(self, s: int):
        """Substitute ``q -> q^s``."""
        return type(self)(self.nvars, {e * s: p for e, p in self.terms.items()}, self.order * s)

    def inverse(self):
        """Inverse of a series whose leading term is the constant polynomial 1 at exponent 0."""
        one = (0,) * self.nvars
        if self.terms.get(Fraction(0)) != {one: 1} or self.valuation() != 0:
            raise ValueError("only series with leading term 1 are inverted here")
        if any(e.denominator != 1 for e in self.terms):
            raise ValueError("inverse needs integer exponents")
        n_terms = int(-((-self.order) // 1))
        a = [self.terms.get(Fraction(i), {}) for i in range(n_terms)]
        b: list[Poly] = [{one: 1}]
        for n in range(1, n_terms):
            acc: Poly = {}
            for i in range(1, n + 1):
                if a[i] and b[n - i]:
                    acc = _padd(acc, _pmul(a[i], b[n - i]))
            b.append(_pscale(acc, -1))
        return type(self)(self.nvars, {i: p for i, p in enumerate(b)}, self.order)

    def specialize(self, values: tuple[int, ...] | None = None) -> QSeries:
        """Evaluate every coefficient at the given integer point (default all ones)."""
        values = values or (1,) * self.nvars
        out = {}
        for e, p in self.terms.items():
            tot = 0
            for m, c in p.items():
                term = Fraction(c)
                for x, k in zip(values, m):
                    term *= Fraction(x) ** k
                tot += term
            if tot.denominator != 1:
                raise ValueError("specialization left a non-integer coefficient")
            out[e] = int(tot)
        return QSeries.from_exponents(out, self.order)

    @classmethod
    def from_qseries(cls, f: QSeries, nvars: int):
        one = (0,) * nvars
        return cls(nvars, {e: {one: c} for e, c in f.exponents().items()}, f.order)


class JacobiSeries(_PolySeries):
    """q-series with Laurent-polynomial coefficients in ``y``."""

    def __init__(self, nvars: int = 1, terms: Mapping = None, order: Rational = 0):
        if nvars != 1:
            raise ValueError("a JacobiSeries has exactly one coefficient variable")
        super().__init__(1, terms or {}, order)

    @classmethod
    def build(cls, terms: Mapping[Rational, Mapping[int, int]], order: Rational) -> "JacobiSeries":
        return cls(1, {e: {(j,): c for j, c in p.items()} for e, p in terms.items()}, order)

    def y_coefficients(self, e: Rational) -> dict[int, int]:
        """``{j: c}`` for the coefficient ``sum_j c y^j`` of ``q^e``."""
        return {m[0]: c for m, c in sorted(self.coefficient(e).items())}

    def at_y1(self) -> QSeries:
        return self.specialize((1,))

    def is_palindromic(self) -> bool:
        return all(p == {(-m[0],): c for m, c in p.items()} for p in self.terms.values())

    def to_text(self) -> str:
        parts = [f"({_pformat(p, ('y',))})*q^({e})" for e, p in self.terms.items()]
        return " + ".join(parts + [f"O(q^({self.order}))"])

    def to_dict(self) -> dict:
        return {
            "order": str(self.order),
            "terms": [[str(e), [[m[0], str(c)] for m, c in sorted(p.items())]] for e, p in self.terms.items()],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


class HodgeSeries(_PolySeries):
    """t-series with polynomial coefficients in ``u, v``."""

    def __init__(self, nvars: int = 2, terms: Mapping = None, order: Rational = 0):
        if nvars != 2:
            raise ValueError("a HodgeSeries has exactly two coefficient variables")
        super().__init__(2, terms or {}, order)

    def uv_coefficients(self, n: int) -> dict[tuple[int, int], int]:
        return dict(sorted(self.coefficient(n).items()))

    def at_uv1(self) -> QSeries:
        return self.specialize((1, 1))

    def to_text(self) -> str:
        parts = [f"({_pformat(p, ('u', 'v'))})*t^{e}" for e, p in self.terms.items()]
        return " + ".join(parts + [f"O(t^{self.order})"])

    def to_dict(self) -> dict:
        return {
            "order": str(self.order),
            "terms": [[str(e), [[m[0], m[1], str(c)] for m, c in sorted(p.items())]] for e, p in self.terms.items()],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _binomial_power(x: Poly, m: int, h: int, length: int, nvars: int) -> dict[int, Poly]:
    """``(1 - x t^m)^(-h)`` as ``{t-exponent: poly}`` below ``length``, for ``h`` of either sign."""
    out: dict[int, Poly] = {0: {(0,) * nvars: 1}}
    power = {(0,) * nvars: 1}
    j = 1
    while m * j < length:
        power = _pmul(power, x)
        # coefficient of X^j in (1 - X)^(-h) is (-1)^j binom(-h, j)
        c = comb(h + j - 1, j) if h >= 0 else (-1) ** j * comb(-h, j)
        if c:
            out[m * j] = _pscale(power, c)
        j += 1
    return out


def psi_product(order: Rational) -> JacobiSeries:
    """``prod_n (1 - y q^n)^2 (1 - y^-1 q^n)^2 (1 - q^n)^-4``; leading term 1."""
    order = Fraction(order)
    length = int(-((-order) // 1))
    result = JacobiSeries(1, {0: {(0,): 1}}, order)
    for n in range(1, length):
        for x, h in (({(1,): 1}, -2), ({(-1,): 1}, -2), ({(0,): 1}, 4)):
            result = result * JacobiSeries(1, _binomial_power(x, n, h, length, 1), order)
    return result


def weak_jacobi_phi_m2_1(order: Rational) -> JacobiSeries:
    """``phi_{-2,1}(q, y) = (y - 2 + y^-1) psi(q, y)``."""
    prefactor = JacobiSeries.build({0: {-1: 1, 0: -2, 1: 1}}, Fraction(order))
    return prefactor * psi_product(order)


def chi_y_series(case: CaseRecord, order: Rational) -> JacobiSeries:
    """``y^-1 (1-y)^2 Z_{X,G}(q) / phi_{-2,1}(q^k, y)``.

    The prefactor ``y^-1 (1-y)^2`` equals the leading coefficient of ``phi``, so
    the quotient is ``Z_{X,G}(q) / psi(q^k, y)`` and only ``psi`` (leading term 1)
    is ever inverted.
    """
    order = Fraction(order)
    z = global_series(case, order)
    shift = -z.valuation()
    inv_psi = psi_product(Fraction(order + shift, case.k)).inverse().rescale(case.k)
    return (JacobiSeries.from_qseries(z, 1) * inv_psi).truncate(order)


def hodge_series_Y(order: int, hodge: Mapping[tuple[int, int], int] = K3_HODGE) -> HodgeSeries:
    """``prod_m prod_{p,q} (1 - u^p v^q (uv)^(m-1) t^m)^(-(-1)^(p+q) h^{p,q})`` through ``t^order``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    length = order + 1
    result = HodgeSeries(2, {0: {(0, 0): 1}}, length)
    for m in range(1, length):
        for (p, q), h in hodge.items():
            x = {(p + m - 1, q + m - 1): 1}
            sign = (-1) ** (p + q)
            result = result * HodgeSeries(2, _binomial_power(x, m, sign * h, length, 2), length)
    return result


def zbir_euler_consistency(case: CaseRecord, order: Rational, delta_exponent: int = 24) -> bool:
    """Euler shadow of the birational formula: ``Z^bir_Y(q^k) * Delta(k tau) = 1`` below ``order``.

    With ``Z^bir_Y`` specialized to Euler characteristics, ``Z^bir_Y(q^k)`` is
    ``q^-k prod (1 - q^(km))^-24``; ``delta_exponent`` replaces the 24 inside
    ``Delta`` for negative controls.  The product with ``Z_{X,G}`` must then
    return ``Z_{X,G}`` itself.
    """
    order = Fraction(order)
    k = case.k
    zbir = eta_quotient_expansion(EtaQuotient(((1, -24),)), order / k + 2).rescale(k)
    delta = eta_quotient_expansion(EtaQuotient(((1, 24),)), order / k + 2).rescale(k)
    if delta_exponent != 24:
        delta = (eta_quotient_expansion(EtaQuotient(((1, delta_exponent),)), order / k + 2)
                 .shift(Fraction(24 - delta_exponent, 24)).rescale(k))
    shadow = (zbir * delta).truncate(order + 1)
    if shadow != QSeries.one(order + 1):
        return False
    # Z_{X,G} has valuation -1, so one extra order keeps the product exact below ``order``
    z = global_series(case, order)
    return (shadow * z).truncate(order) == z
