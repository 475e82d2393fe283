"""
Enumeration of lattice points in an ellipsoid ``(m+s)^T G (m+s) < R``.

``G`` is a positive definite integer matrix, ``s`` a rational shift and ``R`` a
rational radius.  :func:`ellipsoid_points` is a Fincke-Pohst search: interval
endpoints are computed in floating point with a safety slack, so it may visit
a few points just outside the ellipsoid but never misses one, and every point
it returns has been re-checked with exact integer arithmetic.
:func:`box_points` is the brute-force oracle: it derives a rational box from a
certified lower bound on the smallest eigenvalue and filters exhaustively.
"""

from __future__ import annotations

import itertools
import os
from fractions import Fraction
from math import ceil, floor, isqrt, sqrt
from typing import Sequence

import numpy as np

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "ETAFORGE_ENUM_BUDGET"
_SLACK = 1e-7


class EnumerationBudgetExceeded(RuntimeError):
    def __init__(self, budget: int, reached: int, what: str = "lattice enumeration budget of {budget} vectors"):
        super().__init__(f"{what.format(budget=budget)} exceeded (reached {reached})")
        self.budget = budget
        self.reached = reached


def enumeration_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def _common_denominator(shift: Sequence[Fraction]) -> int:
    L = 1
    for x in shift:
        L = L * x.denominator // np.gcd(L, x.denominator)
    return int(L)


def exact_lt(gram: Sequence[Sequence[int]], shift: Sequence[Fraction], radius: Fraction,
             points: np.ndarray) -> np.ndarray:
    """Boolean mask of the rows ``m`` with ``(m+s)^T G (m+s) < R`` exactly.

    With ``L`` the common denominator of ``s`` the test reads
    ``X^T G X * den(R) < num(R) * L^2`` for the integer vector ``X = L (m+s)``.
    Python integers take over when int64 could overflow.
    """
    if len(points) == 0:
        return np.zeros(0, dtype=bool)
    L = _common_denominator(shift)
    R = Fraction(radius)
    rhs = R.numerator * L * L
    offs = [int(x * L) for x in shift]
    n = points.shape[1]
    xmax = (int(np.abs(points).max()) + 1) * L + max(abs(o) for o in offs)
    gmax = max(abs(int(g)) for row in gram for g in row)
    if n * n * gmax * xmax * xmax * R.denominator < 2**62 and abs(rhs) < 2**62:
        X = points * L + np.array(offs, dtype=np.int64)
        vals = np.einsum("ij,jk,ik->i", X, np.array(gram, dtype=np.int64), X)
        return vals * R.denominator < rhs
    X = points.astype(object) * L + np.array(offs, dtype=object)
    vals = X.dot(np.array(gram, dtype=object))
    vals = (vals * X).sum(axis=1)
    return np.array([v * R.denominator < rhs for v in vals], dtype=bool)


def ellipsoid_points(gram: Sequence[Sequence[int]], shift: Sequence[Fraction], radius: Fraction,
                     budget: int | None = None) -> np.ndarray:
    """All integer ``m`` with ``(m+s)^T G (m+s) < radius``, as an ``(N, n)`` int64 array."""
    budget = enumeration_budget(budget)
    n = len(gram)
    shift = [Fraction(x) for x in shift]
    R = float(radius)
    if radius <= 0:
        return np.zeros((0, n), dtype=np.int64)
    s = [float(x) for x in shift]
    slack = _SLACK * (1.0 + R)
    dt, v = _upper_ldl(np.array(gram, dtype=float))
    # column i of v restricted to rows l < i, for incremental centre updates
    vcol = [[v[l][i] for l in range(i)] for i in range(n)]
    runs: list[tuple] = []  # (lo, hi, m_1, ..., m_{n-1}): a run of points along m_0
    m = [0] * n
    count = 0

    def search(i: int, remaining: float, acc: list):
        nonlocal count
        c = acc[i]
        half = sqrt(max(remaining, 0.0) / dt[i] + slack)
        lo = ceil(-half - c - s[i] - slack)
        hi = floor(half - c - s[i] + slack)
        if hi < lo:
            return
        if i == 0:
            count += hi - lo + 1
            if count > budget:
                raise EnumerationBudgetExceeded(budget, count)
            runs.append((lo, hi, *m[1:]))
            return
        vi, di, si = vcol[i], dt[i], s[i]
        for t in range(lo, hi + 1):
            m[i] = t
            yi = t + si
            w = yi + c
            search(i - 1, remaining - di * w * w, [acc[l] + vi[l] * yi for l in range(i)])

    search(n - 1, R, [0.0] * n)
    pts = _expand_runs(runs, n)
    return pts[exact_lt(gram, shift, radius, pts)]


def _expand_runs(runs: list[tuple], n: int) -> np.ndarray:
    if not runs:
        return np.zeros((0, n), dtype=np.int64)
    arr = np.array(runs, dtype=np.int64)
    counts = arr[:, 1] - arr[:, 0] + 1
    starts = np.repeat(np.cumsum(counts) - counts, counts)
    first = np.repeat(arr[:, 0], counts) + (np.arange(counts.sum()) - starts)
    rest = np.repeat(arr[:, 2:], counts, axis=0)
    return np.column_stack([first, rest]).astype(np.int64)


def _upper_ldl(A: np.ndarray):
    """``y^T A y = sum_i d_i (y_i + sum_{j>i} v_ij y_j)^2``."""
    n = A.shape[0]
    A = A.copy()
    d = np.zeros(n)
    v = np.zeros((n, n))
    for i in range(n):
        d[i] = A[i, i]
        for j in range(i + 1, n):
            v[i, j] = A[i, j] / d[i]
        for j in range(i + 1, n):
            for l in range(i + 1, n):
                A[j, l] -= d[i] * v[i, j] * v[i, l]
    return d, v.tolist()


def exact_ldl_pivots(gram: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Pivots of the exact symmetric elimination; all positive iff positive definite."""
    n = len(gram)
    A = [[Fraction(x) for x in row] for row in gram]
    piv = []
    for i in range(n):
        p = A[i][i]
        piv.append(p)
        if p == 0:
            return piv
        for j in range(i + 1, n):
            f = A[j][i] / p
            for l in range(i, n):
                A[j][l] -= f * A[i][l]
    return piv


def certified_min_eigenvalue_bound(gram: Sequence[Sequence[int]]) -> Fraction:
    """A rational ``lam > 0`` with ``G - lam*I`` positive definite (checked exactly)."""
    lam_f = float(np.linalg.eigvalsh(np.array(gram, dtype=float)).min())
    lam = Fraction(lam_f * 0.999).limit_denominator(10**6)
    n = len(gram)
    while True:
        shifted = [[Fraction(gram[i][j]) - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        if lam > 0 and all(p > 0 for p in exact_ldl_pivots(shifted)):
            return lam
        lam /= 2


def box_points(gram: Sequence[Sequence[int]], shift: Sequence[Fraction], radius: Fraction) -> np.ndarray:
    """Brute-force oracle for :func:`ellipsoid_points` (use only in small rank)."""
    n = len(gram)
    shift = [Fraction(x) for x in shift]
    radius = Fraction(radius)
    if radius <= 0:
        return np.zeros((0, n), dtype=np.int64)
    lam = certified_min_eigenvalue_bound(gram)
    # |y_i|^2 <= |y|^2 <= Q(y)/lam < R/lam
    B = radius / lam
    ranges = []
    for si in shift:
        r = isqrt(B.numerator // B.denominator) + 1
        lo = floor(-r - si)
        hi = ceil(r - si)
        ranges.append(range(lo, hi + 1))
    pts = np.array(list(itertools.product(*ranges)), dtype=np.int64).reshape(-1, n)
    return pts[exact_lt(gram, shift, radius, pts)]
