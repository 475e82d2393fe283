r"""
ADE root data and the shifted theta function of a root lattice.

Node orderings
--------------
``A_n``
    the chain ``1 - 2 - ... - n``.
``D_n``
    the chain ``1 - ... - (n-2)`` with the two leaves ``n-1`` and ``n`` both
    attached to node ``n-2``.  For ``D_4`` this reads (leaf, centre, leaf, leaf).
``E_6, E_7, E_8``
    Bourbaki numbering: the chain ``1 - 3 - 4 - 5 - ... - n`` with node ``2``
    attached to node ``4``.

Coordinates of ``zeta`` depend on the ordering; ``(zeta|zeta)``, ``k`` and the
theta series do not.

The shifted theta function is

.. MATH::

    \theta_\Delta(\tau) = \sum_{m \in \mathbb{Z}^n} q^{\frac{k}{2}(m + \zeta/k \,|\, m + \zeta/k)},
    \qquad (u|v) = u^T C_\Delta v, \qquad \zeta = C_\Delta^{-1} d,

with ``d`` the highest root and ``k = 1 + sum d_i^2`` the order of the binary
polyhedral group.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .eta import EtaQuotient, eta_quotient_expansion
from .lattice import ellipsoid_points
from .qseries import QSeries, Rational

__all__ = [
    "Polyhedral",
    "RootSystemData",
    "InvalidTypeTag",
    "parse_tag",
    "ade_data",
    "cartan_matrix",
    "solve_exact",
    "bilinear",
    "strange_formula_residual",
    "theta_series",
    "shifted_theta_series",
    "theta_eta_quotient",
    "theta_eta_identity_residual",
    "simple_reflection",
]

_TAG = re.compile(r"^([ADE])(\d+)$")

_E_HIGHEST = {
    6: (1, 2, 2, 3, 2, 1),
    7: (2, 2, 3, 4, 3, 2, 1),
    8: (2, 3, 4, 6, 5, 4, 3, 2),
}

# (M, (p, q, r), (E, F, V)) for the rotation group H = G/{+-1}
_E_POLY = {
    6: (12, (2, 3, 3), (6, 4, 4)),
    7: (24, (2, 3, 4), (12, 8, 6)),
    8: (60, (2, 3, 5), (30, 20, 12)),
}


class InvalidTypeTag(ValueError):
    pass


def parse_tag(tag: str) -> tuple[str, int]:
    m = _TAG.match(tag.strip())
    if not m:
        raise InvalidTypeTag(f"not an ADE type tag: {tag!r}")
    fam, n = m.group(1), int(m.group(2))
    if fam == "A" and n < 1:
        raise InvalidTypeTag(f"A_n needs n >= 1: {tag!r}")
    if fam == "D" and n < 4:
        raise InvalidTypeTag(f"D_n needs n >= 4: {tag!r}")
    if fam == "E" and n not in (6, 7, 8):
        raise InvalidTypeTag(f"E_n needs n in 6, 7, 8: {tag!r}")
    return fam, n


def _edges(fam: str, n: int) -> list[tuple[int, int]]:
    if fam == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if fam == "D":
        chain = [(i, i + 1) for i in range(n - 3)]
        return chain + [(n - 3, n - 2), (n - 3, n - 1)]
    # Bourbaki, 0-indexed: 0-2, 2-3, 3-4, ..., and 1-3
    return [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]


def cartan_matrix(tag: str) -> list[list[int]]:
    fam, n = parse_tag(tag)
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in _edges(fam, n):
        C[i][j] = C[j][i] = -1
    return C


def _highest_root(fam: str, n: int) -> tuple[int, ...]:
    if fam == "A":
        return (1,) * n
    if fam == "D":
        return (1,) + (2,) * (n - 3) + (1, 1)
    return _E_HIGHEST[n]


def solve_exact(A: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[Fraction, ...]:
    """Solve ``A x = b`` over the rationals by Gauss-Jordan elimination."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(A)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return tuple(M[i][n] for i in range(n))


def bilinear(C: Sequence[Sequence[int]], u: Sequence, v: Sequence) -> Fraction:
    """``(u|v) = u^T C v`` in exact arithmetic."""
    n = len(C)
    return sum((Fraction(u[i]) * C[i][j] * Fraction(v[j]) for i in range(n) for j in range(n)
                if C[i][j]), Fraction(0))


@dataclass(frozen=True)
class Polyhedral:
    M: int
    pqr: tuple[int, int, int]
    EFV: tuple[int, int, int]


@dataclass(frozen=True)
class RootSystemData:
    type_tag: str
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    highest_root: tuple[int, ...]
    zeta: tuple[Fraction, ...]
    group_order: int
    polyhedral: Optional[Polyhedral]

    @property
    def k(self) -> int:
        return self.group_order

    @property
    def zeta_norm(self) -> Fraction:
        """``(zeta|zeta)``, equal to ``zeta . d``."""
        return sum((z * d for z, d in zip(self.zeta, self.highest_root)), Fraction(0))

    @property
    def minimal_exponent(self) -> Fraction:
        return self.zeta_norm / (2 * self.k)


def ade_data(tag: str) -> RootSystemData:
    fam, n = parse_tag(tag)
    C = cartan_matrix(tag)
    d = _highest_root(fam, n)
    zeta = solve_exact(C, d)
    k = 1 + sum(x * x for x in d)
    poly = None
    if fam == "D":
        E = n - 2
        poly = Polyhedral(M=2 * E, pqr=(2, n - 2, 2), EFV=(E, 2, n - 2))
    elif fam == "E":
        M, pqr, efv = _E_POLY[n]
        poly = Polyhedral(M=M, pqr=pqr, EFV=efv)
    return RootSystemData(
        type_tag=f"{fam}{n}",
        family=fam,
        rank=n,
        cartan=tuple(tuple(r) for r in C),
        highest_root=d,
        zeta=zeta,
        group_order=k,
        polyhedral=poly,
    )


def strange_formula_residual(tag: str) -> Fraction:
    """``(k(n+1) - 1)/24 - (zeta|zeta)/(2k)``; zero for every ADE type."""
    R = ade_data(tag)
    lhs = Fraction(R.k * (R.rank + 1) - 1, 24)
    rhs = bilinear(R.cartan, R.zeta, R.zeta) / (2 * R.k)
    return lhs - rhs


def shifted_theta_series(cartan: Sequence[Sequence[int]], shift: Sequence[Fraction], k: int,
                         order: Rational, budget: int | None = None) -> QSeries:
    """``sum_m q^{(k/2)(m+s | m+s)}`` over all ``m`` with exponent below ``order``."""
    order = Fraction(order)
    shift = [Fraction(x) for x in shift]
    pts = ellipsoid_points(cartan, shift, 2 * order / k, budget)
    L = 1
    for x in shift:
        L = L * x.denominator // np.gcd(L, x.denominator)
    L = int(L)
    X = pts.astype(object) * L + np.array([int(x * L) for x in shift], dtype=object)
    G = np.array(cartan, dtype=object)
    norms = Counter((X.dot(G) * X).sum(axis=1).tolist()) if len(X) else Counter()
    # exponent = (k/2) * (X|X) / L^2
    coeffs = {Fraction(k * v, 2 * L * L): c for v, c in norms.items()}
    return QSeries.from_exponents(coeffs, order)


def theta_series(tag: str, order: Rational, budget: int | None = None) -> QSeries:
    R = ade_data(tag)
    return shifted_theta_series(R.cartan, [z / R.k for z in R.zeta], R.k, order, budget)


def simple_reflection(cartan: Sequence[Sequence[int]], i: int, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """``s_i(x) = x - (x|alpha_i) alpha_i`` in simple-root coordinates."""
    n = len(cartan)
    pairing = sum(Fraction(cartan[i][j]) * x[j] for j in range(n))
    return tuple(Fraction(x[j]) - (pairing if j == i else 0) for j in range(n))


def theta_eta_quotient(tag: str, efv: Optional[tuple[int, int, int]] = None) -> EtaQuotient:
    """The eta product equal to ``theta_Delta``.

    ``efv`` overrides the polyhedral counts of a D/E type.
    """
    R = ade_data(tag)
    n = R.rank
    if R.family == "A":
        return EtaQuotient(((n + 1, n + 1), (1, -1)))
    E, F, V = efv if efv is not None else R.polyhedral.EFV
    return EtaQuotient(((2, 2), (4 * E, n + 2), (1, -1), (2 * E, -1), (2 * F, -1), (2 * V, -1)))


def theta_eta_identity_residual(tag: str, order: Rational, budget: int | None = None,
                                efv: Optional[tuple[int, int, int]] = None) -> QSeries:
    """``theta_Delta`` minus its eta product; the zero series when the identity holds."""
    order = Fraction(order)
    theta = theta_series(tag, order, budget)
    return theta - eta_quotient_expansion(theta_eta_quotient(tag, efv), order)
