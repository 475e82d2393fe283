r"""
Exact truncated Laurent series in a fractional power of `q`.

A :class:`QSeries` stores big-integer coefficients on the exponent grid
``(1/denom) * Z``.  Every series carries a truncation ``order``: all
coefficients at exponents strictly below ``order`` are known exactly, nothing
is claimed at or above it.  Eta products contribute shifts by multiples of
``1/24`` and the substitution ``tau -> s*tau`` contributes further
denominators, so binary operations reconcile grids by taking the lcm.

EXAMPLES::

    >>> q = QSeries.monomial(1, order=3)
    >>> (1 + q) * (1 - q)
    QSeries('1*q^(0) + -1*q^(2) + O(q^(3))')
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import ceil, gcd
from types import MappingProxyType
from typing import Iterable, Mapping, Union

Rational = Union[int, Fraction]

__all__ = [
    "QSeries",
    "NotInvertibleError",
    "series_add",
    "series_mul",
    "series_inverse",
    "series_rescale",
]


class NotInvertibleError(ArithmeticError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("exponents and orders must be exact rationals")
    return Fraction(x)


def _ceil_grid(order: Fraction, denom: int) -> int:
    """Smallest grid index ``g`` with ``g/denom >= order``."""
    return ceil(order * denom)


class QSeries:
    """Truncated series ``sum_g c_g q^(g/denom) + O(q^order)``.

    Instances are immutable: ``terms`` is a read-only view and no method
    mutates ``self``.
    """

    __slots__ = ("_denom", "_terms", "_order")

    def __init__(self, terms: Mapping[int, int], denom: int = 1, order: Rational = 0):
        if denom < 1:
            raise ValueError("grid denominator must be a positive integer")
        order = _frac(order)
        top = _ceil_grid(order, denom)
        clean = {int(g): int(c) for g, c in terms.items() if c and g < top}
        self._denom = int(denom)
        self._terms = MappingProxyType(dict(sorted(clean.items())))
        self._order = order

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, order: Rational, denom: int = 1) -> "QSeries":
        return cls({}, denom, order)

    @classmethod
    def one(cls, order: Rational, denom: int = 1) -> "QSeries":
        return cls({0: 1}, denom, order)

    @classmethod
    def monomial(cls, exponent: Rational, coeff: int = 1, order: Rational = None) -> "QSeries":
        exponent = _frac(exponent)
        if order is None:
            order = exponent + 1
        order = _frac(order)
        d = exponent.denominator
        return cls({exponent.numerator: coeff}, d, order)

    @classmethod
    def from_exponents(cls, coeffs: Mapping[Rational, int], order: Rational) -> "QSeries":
        """Build a series from a map ``exponent -> coefficient`` with rational exponents."""
        order = _frac(order)
        exps = {_frac(e): c for e, c in coeffs.items()}
        denom = 1
        for e in exps:
            denom = _lcm(denom, e.denominator)
        terms = {}
        for e, c in exps.items():
            g = int(e * denom)
            terms[g] = terms.get(g, 0) + c
        return cls(terms, denom, order)

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int], order: Rational = None,
                          shift: Rational = 0) -> "QSeries":
        """``q^shift * sum_j coeffs[j] q^j``; default order is ``shift + len(coeffs)``."""
        coeffs = list(coeffs)
        shift = _frac(shift)
        if order is None:
            order = shift + len(coeffs)
        return cls.from_exponents({shift + j: c for j, c in enumerate(coeffs) if c}, order)

    # -- basic accessors -------------------------------------------------

    @property
    def denom(self) -> int:
        return self._denom

    @property
    def terms(self) -> Mapping[int, int]:
        return self._terms

    @property
    def order(self) -> Fraction:
        return self._order

    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self) -> Fraction:
        """Lowest exponent with a nonzero coefficient (``order`` for the zero series)."""
        if not self._terms:
            return self._order
        return Fraction(next(iter(self._terms)), self._denom)

    def leading_coefficient(self) -> int:
        if not self._terms:
            return 0
        return next(iter(self._terms.values()))

    def coefficient(self, exponent: Rational) -> int:
        exponent = _frac(exponent)
        if exponent >= self._order:
            raise ValueError(f"coefficient of q^({exponent}) is beyond the truncation order {self._order}")
        g = exponent * self._denom
        if g.denominator != 1:
            return 0
        return self._terms.get(int(g), 0)

    def exponents(self) -> dict[Fraction, int]:
        return {Fraction(g, self._denom): c for g, c in self._terms.items()}

    def coefficient_list(self, start: Rational = None, step: Rational = 1) -> list[int]:
        """Coefficients at ``start, start+step, ...`` below ``order``.

        ``start`` defaults to the valuation.
        """
        start = self.valuation() if start is None else _frac(start)
        step = _frac(step)
        out = []
        e = start
        while e < self._order:
            out.append(self.coefficient(e))
            e += step
        return out

    # -- grid handling ----------------------------------------------------

    def on_grid(self, denom: int) -> "QSeries":
        """Same series expressed on the finer grid ``1/denom`` (must be a multiple)."""
        if denom % self._denom:
            raise ValueError(f"grid 1/{denom} does not refine grid 1/{self._denom}")
        f = denom // self._denom
        return QSeries({g * f: c for g, c in self._terms.items()}, denom, self._order)

    def reduced(self) -> "QSeries":
        """Coarsest grid that carries every nonzero term."""
        h = self._denom
        for g in self._terms:
            h = gcd(h, g)
            if h == 1:
                return self
        return QSeries({g // h: c for g, c in self._terms.items()}, self._denom // h, self._order)

    def truncate(self, order: Rational) -> "QSeries":
        order = min(_frac(order), self._order)
        return QSeries(self._terms, self._denom, order)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, int):
            return QSeries({0: other}, 1, self._order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries({g: -c for g, c in self._terms.items()}, self._denom, self._order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return series_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return series_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries({g: c * other for g, c in self._terms.items()}, self._denom, self._order)
        if not isinstance(other, QSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return series_inverse(self) ** (-n)
        if n == 0:
            return QSeries.one(self._order - self.valuation())
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else series_mul(result, base)
            n >>= 1
            if n:
                base = series_mul(base, base)
        return result

    def shift(self, exponent: Rational) -> "QSeries":
        """Multiply by ``q^exponent``; the order shifts along."""
        e = _frac(exponent)
        d = _lcm(self._denom, e.denominator)
        f, off = d // self._denom, int(e * d)
        return QSeries({g * f + off: c for g, c in self._terms.items()}, d, self._order + e)

    def inverse(self) -> "QSeries":
        return series_inverse(self)

    def rescale(self, s: Rational) -> "QSeries":
        return series_rescale(self, s)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._order == other._order and self.exponents() == other.exponents()

    def __hash__(self):
        return hash((self._order, tuple(sorted(self.exponents().items()))))

    def agrees_with(self, other: "QSeries") -> bool:
        """Equality of all coefficients below the smaller of the two orders."""
        o = min(self._order, other._order)
        return self.truncate(o).exponents() == other.truncate(o).exponents()

    # -- rendering -------------------------------------------------------

    def to_text(self) -> str:
        parts = [f"{c}*q^({Fraction(g, self._denom)})" for g, c in self._terms.items()]
        parts.append(f"O(q^({self._order}))")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"QSeries({self.to_text()!r})"

    __str__ = to_text

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dict(self) -> dict:
        return {
            "denom": self._denom,
            "order": str(self._order),
            "terms": [[g, str(c)] for g, c in self._terms.items()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "QSeries":
        return cls({int(g): int(c) for g, c in data["terms"]}, int(data["denom"]), Fraction(data["order"]))

    @classmethod
    def from_json(cls, text: str) -> "QSeries":
        return cls.from_dict(json.loads(text))


def series_add(a: QSeries, b: QSeries) -> QSeries:
    """Coefficientwise sum, valid below ``min(a.order, b.order)``."""
    d = _lcm(a.denom, b.denom)
    fa, fb = d // a.denom, d // b.denom
    terms = {g * fa: c for g, c in a.terms.items()}
    for g, c in b.terms.items():
        g *= fb
        terms[g] = terms.get(g, 0) + c
    return QSeries(terms, d, min(a.order, b.order))


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Truncated product.

    If ``a = O(q^A)`` beyond its known terms and ``b`` starts at ``q^vb``, the
    unknown tail of ``a`` pollutes the product from ``A + vb`` on; likewise for
    ``b``.  Hence ``order = min(a.order + val(b), b.order + val(a))``, where a
    zero series has valuation equal to its order.
    """
    order = min(a.order + b.valuation(), b.order + a.valuation())
    d = _lcm(a.denom, b.denom)
    fa, fb = d // a.denom, d // b.denom
    top = _ceil_grid(order, d)
    bt = [(g * fb, c) for g, c in b.terms.items()]
    terms: dict[int, int] = {}
    for ga, ca in a.terms.items():
        ga *= fa
        for gb, cb in bt:
            g = ga + gb
            if g >= top:
                break
            terms[g] = terms.get(g, 0) + ca * cb
    return QSeries(terms, d, order)


def series_inverse(a: QSeries) -> QSeries:
    """Multiplicative inverse of a series whose leading coefficient is ``+-1``.

    The result is valid to ``order = a.order - 2*val(a)``, which is what
    :func:`series_mul` then reports for ``a * a^-1``.
    """
    if a.is_zero():
        raise NotInvertibleError("not invertible over integers: zero series")
    lead = a.leading_coefficient()
    if lead not in (1, -1):
        raise NotInvertibleError(f"not invertible over integers: leading coefficient {lead}")
    v = a.valuation()
    g0 = next(iter(a.terms))
    # work on the coarsest grid carrying the offsets of a from its valuation
    step = 0
    for g in a.terms:
        step = gcd(step, g - g0)
    step = step or a.denom
    rel = [((g - g0) // step, c) for g, c in a.terms.items()][1:]
    order = a.order - 2 * v
    length = max(ceil((order + v) * a.denom / step), 0)
    # b = lead * sum_j b_j x^j with x = q^(step/denom); recurrence b_j = -lead * sum rel_i b_{j-i}
    b = [0] * length
    if length:
        b[0] = 1
    for j in range(1, length):
        s = 0
        for i, c in rel:
            if i > j:
                break
            s += c * b[j - i]
        b[j] = -lead * s
    terms = {}
    for j, c in enumerate(b):
        if c:
            terms[j * step - g0] = lead * c
    return QSeries(terms, a.denom, order)


def series_rescale(a: QSeries, s: Rational) -> QSeries:
    """Substitute ``q -> q^s`` (that is ``tau -> s*tau``) for rational ``s > 0``."""
    s = _frac(s)
    if s <= 0:
        raise ValueError("rescaling factor must be positive")
    p, r = s.numerator, s.denominator
    d = a.denom * r
    h = gcd(p, d)
    return QSeries({g * (p // h): c for g, c in a.terms.items()}, d // h, a.order * s)
