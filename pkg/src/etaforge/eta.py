"""
Dedekind eta expansions and eta quotients ``prod_m eta(m*tau)^(r_m)``.

Modularity bookkeeping follows the classical criteria for eta quotients
(weight ``sum(r_m)/2``; the two congruences ``sum m*r_m = 0`` and
``sum (N/m)*r_m = 0`` mod 24; character attached to ``(-1)^weight * prod m^r_m``)
and Ligozat's formula for the order at a cusp of ``Gamma_0(N)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping, Optional

from .qseries import QSeries, Rational, series_rescale

__all__ = [
    "EtaQuotient",
    "ModularMeta",
    "LevelError",
    "eta_expansion",
    "eta_quotient_expansion",
    "eta_quotient_expansion_by_products",
    "eta_product_coefficients",
    "eta_quotient_metadata",
    "cusp_orders",
    "cusp_label",
    "gamma0_index",
    "gamma0_cusps",
    "kronecker",
]


class LevelError(ValueError):
    pass


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def eta_product_coefficients(exponents: Mapping[int, int], length: int) -> list[int]:
    """First ``length`` coefficients of ``prod_m prod_{n>=1} (1 - q^(m n))^(r_m)``.

    Uses the logarithmic derivative: with ``e_j = sum_{m | j} r_m`` the product
    is ``prod_j (1-q^j)^(e_j)`` and ``N f_N = -sum_{i=1}^N sigma_i f_{N-i}``
    where ``sigma_i = sum_{j | i} j e_j``.
    """
    if length <= 0:
        return []
    e = [0] * length
    for m, r in exponents.items():
        for j in range(m, length, m):
            e[j] += r
    sigma = [0] * length
    for j in range(1, length):
        if e[j]:
            je = j * e[j]
            for i in range(j, length, j):
                sigma[i] += je
    f = [0] * length
    f[0] = 1
    for n in range(1, length):
        s = 0
        for i in range(1, n + 1):
            if sigma[i]:
                s += sigma[i] * f[n - i]
        f[n] = -s // n
    return f


@dataclass(frozen=True)
class EtaQuotient:
    """Formal product ``prod_m eta(m tau)^(r_m)``.

    ``factors`` is kept as a sorted tuple of ``(m, r_m)`` pairs with ``r_m != 0``.
    """

    factors: tuple = field(default=())

    def __post_init__(self):
        merged: dict[int, int] = {}
        items = self.factors.items() if isinstance(self.factors, Mapping) else self.factors
        for m, r in items:
            m, r = int(m), int(r)
            if m <= 0:
                raise ValueError(f"eta multiplier must be positive, got {m}")
            merged[m] = merged.get(m, 0) + r
        object.__setattr__(self, "factors", tuple(sorted((m, r) for m, r in merged.items() if r)))

    @classmethod
    def parse(cls, text: str) -> "EtaQuotient":
        """Parse ``"1^8 2^8"``-style tokens; ``"4"`` alone means ``4^1``."""
        pairs = []
        for tok in text.split():
            m, _, r = tok.partition("^")
            pairs.append((int(m), int(r) if r else 1))
        return cls(tuple(pairs))

    def __str__(self) -> str:
        return " ".join(f"{m}^{r}" for m, r in self.factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.factors), 2)

    @property
    def valuation(self) -> Fraction:
        return Fraction(sum(m * r for m, r in self.factors), 24)

    def multipliers(self) -> list[int]:
        return [m for m, _ in self.factors]

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        d = self.as_dict()
        for m, r in other.factors:
            d[m] = d.get(m, 0) + r
        return EtaQuotient(tuple(d.items()))

    def __pow__(self, n: int) -> "EtaQuotient":
        return EtaQuotient(tuple((m, r * n) for m, r in self.factors))

    def inverse(self) -> "EtaQuotient":
        return self ** -1

    def __truediv__(self, other: "EtaQuotient") -> "EtaQuotient":
        return self * other.inverse()

    def rescale(self, s: Rational) -> "EtaQuotient":
        """``f(s tau)``; every new multiplier ``s*m`` must be an integer."""
        s = Fraction(s)
        out = []
        for m, r in self.factors:
            sm = s * m
            if sm.denominator != 1:
                raise ValueError(f"eta({sm} tau) is not an eta factor with integer multiplier")
            out.append((int(sm), r))
        return EtaQuotient(tuple(out))

    def expansion(self, order: Rational) -> QSeries:
        return eta_quotient_expansion(self, order)

    def is_one(self) -> bool:
        return not self.factors


def eta_expansion(order: Rational) -> QSeries:
    """``q^(1/24) prod_{n>=1} (1 - q^n)`` below ``order``."""
    return eta_quotient_expansion(EtaQuotient(((1, 1),)), order)


def eta_quotient_expansion(eq: EtaQuotient, order: Rational) -> QSeries:
    order = Fraction(order)
    v = eq.valuation
    if order <= v:
        return QSeries.zero(order, 24)
    length = -((v - order) // 1)  # ceil(order - v)
    coeffs = eta_product_coefficients(eq.as_dict(), int(length))
    return QSeries.from_coefficients(coeffs, order=order, shift=v)


def eta_quotient_expansion_by_products(eq: EtaQuotient, order: Rational) -> QSeries:
    """Same expansion built only from ``eta_expansion``, rescaling and series products.

    Slow; kept as the independent construction the fast route is checked against.
    """
    order = Fraction(order)
    v_total = eq.valuation
    result = QSeries.one(order - v_total)
    for m, r in eq.factors:
        need = order - (v_total - Fraction(m * r, 24))
        # generous: covers the precision lost by powering and inverting
        base_order = need + Fraction((abs(r) + 1) * m, 24)
        base = series_rescale(eta_expansion(base_order / m), m)
        result = result * (base ** r)
    return result.truncate(order)


@dataclass(frozen=True)
class ModularMeta:
    level: int
    weight: Fraction
    integer_weight: bool
    multipliers_divide_level: bool
    sum_m_r: int
    sum_Nover_m_r: Optional[Fraction]
    s_value: Fraction
    character_discriminant: Optional[int]
    multiplier_system_flag: bool

    @property
    def congruences_hold(self) -> bool:
        return (
            self.multipliers_divide_level
            and self.sum_m_r % 24 == 0
            and self.sum_Nover_m_r is not None
            and self.sum_Nover_m_r.denominator == 1
            and self.sum_Nover_m_r % 24 == 0
        )

    def character_label(self) -> str:
        if self.character_discriminant is None:
            return "undefined for half-integral weight"
        return str(self.character_discriminant)


def _squarefree_part(x: Fraction) -> int:
    n = abs(x.numerator) * x.denominator
    out = 1
    for p, e in _factor(n).items():
        if e % 2:
            out *= p
    return out


def eta_quotient_metadata(eq: EtaQuotient, level: int) -> ModularMeta:
    if level < 1:
        raise ValueError("level must be a positive integer")
    w = eq.weight
    divides = all(level % m == 0 for m, _ in eq.factors)
    sum_mr = sum(m * r for m, r in eq.factors)
    sum_nr = sum(Fraction(level, m) * r for m, r in eq.factors)
    s = Fraction(1)
    for m, r in eq.factors:
        s *= Fraction(m) ** r
    integer = w.denominator == 1
    disc = None
    if integer:
        d0 = (-1) ** int(w) * _squarefree_part(s)
        disc = d0 if d0 % 4 == 1 else 4 * d0
    return ModularMeta(
        level=level,
        weight=w,
        integer_weight=integer,
        multipliers_divide_level=divides,
        sum_m_r=sum_mr,
        sum_Nover_m_r=sum_nr,
        s_value=s,
        character_discriminant=disc,
        multiplier_system_flag=not integer,
    )


def gamma0_index(level: int) -> int:
    """``[SL_2(Z) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p)``."""
    idx = Fraction(level)
    for p in _factor(level):
        idx *= Fraction(p + 1, p)
    return int(idx)


def gamma0_cusps(level: int) -> list[Fraction]:
    """Representatives ``a/c`` of the cusps of ``Gamma_0(N)``, one per class.

    For each ``c | N`` there are ``phi(gcd(c, N/c))`` classes, distinguished by
    ``a mod gcd(c, N/c)``.  ``c = 1`` gives the cusp ``0``, ``c = N`` the cusp
    ``1/N ~ i*infinity``.
    """
    out = []
    for c in _divisors(level):
        if c == 1:
            out.append(Fraction(0))
            continue
        g = gcd(c, level // c)
        seen = set()
        for a in range(1, c + 1):
            if gcd(a, c) == 1 and a % g not in seen:
                seen.add(a % g)
                out.append(Fraction(a, c))
    return out


def cusp_label(cusp: Fraction, level: int) -> str:
    if cusp.denominator == level:
        return "i∞"
    if cusp == 0:
        return "0"
    return str(cusp)


def cusp_orders(eq: EtaQuotient, level: int) -> list[tuple[Fraction, Fraction]]:
    """Order of vanishing (negative for a pole) at every cusp of ``Gamma_0(level)``.

    The order is measured in the local uniformizer at the cusp, so for a
    holomorphic form the orders add up to ``weight * [SL_2(Z):Gamma_0(N)] / 12``.
    """
    if any(level % m for m, _ in eq.factors):
        raise LevelError(f"level incompatible with quotient: some multiplier of {eq} does not divide {level}")
    out = []
    for cusp in gamma0_cusps(level):
        c = cusp.denominator
        g = gcd(c, level // c)
        total = sum(Fraction(gcd(c, m) ** 2 * r, m) for m, r in eq.factors)
        out.append((cusp, Fraction(level, 24) * total / (g * c)))
    return out


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol ``(d / n)``."""
    if n == 0:
        return 1 if abs(d) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if d < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if d % 2 == 0:
            return 0
        if v % 2 and d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d / n) for odd n > 0
    a = d % n if n > 1 else 0
    if n == 1:
        return result
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0
