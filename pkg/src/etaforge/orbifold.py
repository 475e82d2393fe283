"""
Local partition functions ``Z_Delta`` of ``Hilb(C^2)^{G_Delta}``.

Several independent constructions are provided and must agree:

* :func:`local_Z_eta` -- the closed eta product;
* :func:`local_Z_theta` -- ``theta_Delta(tau) / eta(k tau)^(n+1)``;
* :func:`nakajima_specialized` -- the orbifold (Nakajima) series with
  ``q_i = q^(d_i)``, summed over the root lattice with the linear term ``m.d``;
* :func:`local_Z_mckay` -- for D/E types, the recombination through the
  resolution of ``C^2/{+-1}``: a triangular-number sum times a stratified
  product over the three orbifold points of ``[Y/H]``.

:func:`cyclic_hilb_oracle` counts monomial ideals directly and is the
geometric oracle for the multivariate series in type A.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .eta import EtaQuotient, eta_product_coefficients, eta_quotient_expansion
from .lattice import EnumerationBudgetExceeded, ellipsoid_points
from .qseries import QSeries, Rational
from .rootsys import ade_data, bilinear, theta_series

__all__ = [
    "MultiSeries",
    "colored_partitions",
    "local_eta_quotient",
    "local_Z_eta",
    "local_Z_theta",
    "local_Z_mckay",
    "nakajima_multivariate",
    "nakajima_specialized",
    "nakajima_coefficient",
    "cyclic_hilb_oracle",
    "partitions_up_to",
    "ORACLE_MAX_LENGTH",
]

ORACLE_MAX_LENGTH = 30


@dataclass(frozen=True)
class MultiSeries:
    """Series in ``q_0, ..., q_n`` truncated by total degree."""

    rank: int
    terms: Mapping[tuple[int, ...], int] = field(hash=False)
    total_degree_bound: int

    def __post_init__(self):
        clean = {tuple(k): v for k, v in self.terms.items() if v}
        for k in clean:
            if len(k) != self.rank + 1 or sum(k) > self.total_degree_bound:
                raise ValueError(f"multidegree {k} outside rank {self.rank} / bound {self.total_degree_bound}")
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def coefficient(self, multidegree: Sequence[int]) -> int:
        return self.terms.get(tuple(multidegree), 0)

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (self.rank, self.total_degree_bound, self.terms) == (other.rank, other.total_degree_bound, other.terms)


def colored_partitions(colors: int, length: int) -> list[int]:
    """``p_c(j)`` for ``j < length``: coefficients of ``prod_m (1 - Q^m)^(-c)``."""
    return eta_product_coefficients({1: -colors}, length)


def local_eta_quotient(tag: str) -> EtaQuotient:
    R = ade_data(tag)
    if R.family == "A":
        return EtaQuotient(((1, -1),))
    E, F, V = R.polyhedral.EFV
    return EtaQuotient(((2, 2), (4 * E, 1), (1, -1), (2 * E, -1), (2 * F, -1), (2 * V, -1)))


def local_Z_eta(tag: str, order: Rational) -> QSeries:
    return eta_quotient_expansion(local_eta_quotient(tag), Fraction(order))


def local_Z_theta(tag: str, order: Rational, budget: int | None = None) -> QSeries:
    order = Fraction(order)
    R = ade_data(tag)
    n, k = R.rank, R.k
    denom_val = Fraction(k * (n + 1), 24)
    theta = theta_series(tag, order + denom_val, budget)
    inv = eta_quotient_expansion(EtaQuotient(((k, -(n + 1)),)), order - theta.valuation())
    return (theta * inv).truncate(order)


def _nakajima_lattice_sum(tag: str, order: Rational, budget: int | None) -> QSeries:
    """``sum_{m in Z^n} q^{(m.d) + (k/2) m^T C m}`` below ``order``."""
    R = ade_data(tag)
    C = R.cartan
    k = R.k
    order = Fraction(order)
    # (k/2) m^T C m + m.d < order  <=>  (m + zeta/k)^T C (m + zeta/k) < 2 order/k + (zeta|zeta)/k^2
    shift = [z / k for z in R.zeta]
    radius = 2 * order / k + R.zeta_norm / (k * k)
    pts = ellipsoid_points(C, shift, radius, budget)
    if len(pts) == 0:
        return QSeries.zero(order)
    if int(np.abs(pts).max()) >= 10**6:
        raise OverflowError("lattice vectors too long for exact int64 evaluation")
    quad = (pts @ np.array(C, dtype=np.int64) * pts).sum(axis=1)
    lin = pts @ np.array(R.highest_root, dtype=np.int64)
    exps = Counter((k * quad // 2 + lin).tolist())
    return QSeries({e: c for e, c in exps.items()}, 1, order)


def nakajima_specialized(tag: str, order: Rational, budget: int | None = None) -> QSeries:
    """``q^(-1/24) prod_m (1 - q^(k m))^(-n-1) sum_m q^{(m.d) + (k/2)(m|m)}``."""
    order = Fraction(order)
    R = ade_data(tag)
    inner_order = order + Fraction(1, 24)
    lattice = _nakajima_lattice_sum(tag, inner_order, budget)
    length = max(int(-((-inner_order) // R.k)), 1)
    p = colored_partitions(R.rank + 1, length)
    prod = QSeries({R.k * j: c for j, c in enumerate(p)}, 1, inner_order)
    return (lattice * prod).shift(Fraction(-1, 24)).truncate(order)


def local_Z_mckay(tag: str, order: Rational) -> QSeries:
    """D/E local series through the triangular-number sum and the ``[Y/H]`` stratification.

    ``q^(1/24) Z = (sum_j q^(2j^2 + j)) * S(q)`` where ``S`` is the series of
    ``e(Hilb^n(Y)^H) q^(2n)``, stratified over ``(Y/H)^o`` (Euler characteristic
    ``-1``) and three ``A_(a-1)`` points with ``a`` in ``(p, q, r)``; each
    point contributes the partition series in ``q^(2M/a)``.
    """
    R = ade_data(tag)
    if R.family == "A":
        raise ValueError("the recombination route applies to D and E types only")
    order = Fraction(order)
    top = order + Fraction(1, 24)
    N = int(-((-top) // 1))  # integer exponents 0..N-1
    M = R.polyhedral.M
    tri = Counter()
    j = 0
    while True:
        hit = False
        for jj in {j, -j}:
            e = 2 * jj * jj + jj
            if e < N:
                tri[e] += 1
                hit = True
        if not hit:
            break
        j += 1
    jtp = QSeries(dict(tri), 1, N)
    parts = colored_partitions(1, N)
    # open part: prod (1 - q^{2M m})^{+1}
    strat = QSeries({2 * M * j: c for j, c in enumerate(eta_product_coefficients({1: 1}, N // (2 * M) + 1))}, 1, N)
    for a in R.polyhedral.pqr:
        step = 2 * M // a
        strat = strat * QSeries({step * j: c for j, c in enumerate(parts[: N // step + 1])}, 1, N)
    return (jtp * strat).shift(Fraction(-1, 24)).truncate(order)


def _check_rank(R, limit: int = 2):
    if R.rank > limit:
        raise ValueError(f"{R.type_tag} has rank {R.rank} > {limit}: use nakajima_coefficient or the specialization")


def nakajima_multivariate(tag: str, total_degree_bound: int) -> MultiSeries:
    """``prod_m (1-Q^m)^(-n-1) sum_{m in Z^n} q_1^{m_1}...q_n^{m_n} Q^{m^T C m / 2}``.

    ``Q = q_0^{d_0} ... q_n^{d_n}`` with ``d_0 = 1``.  Restricted to rank <= 2.
    """
    R = ade_data(tag)
    _check_rank(R)
    n = R.rank
    dvec = (1,) + R.highest_root
    Qdeg = sum(dvec)
    B = total_degree_bound
    p = colored_partitions(n + 1, B // Qdeg + 1)
    terms: Counter = Counter()
    # a term m, Q^e (e = m^T C m / 2 + j) has degree e*Qdeg + sum(m) and
    # exponents (e, e d_1 + m_1, ...); every exponent is >= 0 so |m_i| <= e d_i <= B
    span = range(-B, B + 1)
    for m in np.ndindex(*(len(span),) * n):
        mv = [span[i] for i in m]
        half = bilinear(R.cartan, mv, mv) / 2
        base = int(half)
        e = base
        while e * Qdeg + sum(mv) <= B:
            deg = (e,) + tuple(e * dvec[i + 1] + mv[i] for i in range(n))
            if min(deg) >= 0:
                terms[deg] += p[e - base]
            e += 1
    return MultiSeries(rank=n, terms=dict(terms), total_degree_bound=B)


def nakajima_coefficient(tag: str, mu: Sequence[int], e: int) -> int:
    """Coefficient of ``q_1^{mu_1} ... q_n^{mu_n} Q^e`` in the orbifold series.

    Distinct lattice vectors carry distinct ``q_1..q_n`` degrees once ``Q`` is
    factored out, so this is ``p_{n+1}(e - mu^T C mu / 2)`` (zero when negative).
    """
    if e < 0:
        raise ValueError("Q-exponent must be nonnegative")
    R = ade_data(tag)
    if len(mu) != R.rank:
        raise ValueError(f"{R.type_tag} needs a vector of length {R.rank}")
    j = Fraction(e) - bilinear(R.cartan, mu, mu) / 2
    if j < 0 or j.denominator != 1:
        return 0
    return colored_partitions(R.rank + 1, int(j) + 1)[int(j)]


def partitions_up_to(N: int):
    """Yield every partition of every integer ``0..N`` as a nonincreasing tuple."""
    def gen(remaining: int, largest: int, prefix: tuple):
        yield prefix
        for part in range(min(remaining, largest), 0, -1):
            yield from gen(remaining - part, part, prefix + (part,))

    yield from gen(N, N, ())


def cyclic_hilb_oracle(k: int, length_bound: int) -> MultiSeries:
    """Count ``Z/k``-invariant monomial ideals of ``C[x, y]`` by representation type.

    ``Z/k`` acts by ``(x, y) -> (w x, w^-1 y)``; the box ``(i, j)`` of a partition
    spans ``x^i y^j``, which has character ``w^(i-j)`` and is coloured ``(i - j) mod k``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if length_bound > ORACLE_MAX_LENGTH:
        raise EnumerationBudgetExceeded(ORACLE_MAX_LENGTH, length_bound, "oracle partition length limit of {budget}")
    terms: Counter = Counter()
    for lam in partitions_up_to(length_bound):
        deg = [0] * k
        for i, row in enumerate(lam):
            for j in range(row):
                deg[(i - j) % k] += 1
        terms[tuple(deg)] += 1
    return MultiSeries(rank=k - 1, terms=dict(terms), total_degree_bound=length_bound)
