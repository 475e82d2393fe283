from __future__ import annotations

import itertools
import random
from collections import Counter
from fractions import Fraction

import pytest

from etaforge.lattice import box_points, exact_ldl_pivots
from etaforge.qseries import QSeries
from etaforge.rootsys import (
    InvalidTypeTag,
    ade_data,
    bilinear,
    cartan_matrix,
    shifted_theta_series,
    simple_reflection,
    strange_formula_residual,
    theta_eta_identity_residual,
    theta_series,
)

TYPES = [f"A{n}" for n in range(1, 13)] + [f"D{n}" for n in range(4, 13)] + ["E6", "E7", "E8"]


def det(C):
    out = Fraction(1)
    for p in exact_ldl_pivots(C):
        out *= p
    return out


@pytest.mark.parametrize("tag", TYPES)
def test_cartan_and_highest_root(tag):
    R = ade_data(tag)
    C = R.cartan
    n = R.rank
    assert all(C[i][j] == C[j][i] for i in range(n) for j in range(n))
    assert all(p > 0 for p in exact_ldl_pivots(C))
    d = R.highest_root
    assert bilinear(C, d, d) == 2
    # dominant: (d | alpha_i) >= 0
    assert all(sum(C[i][j] * d[j] for j in range(n)) >= 0 for i in range(n))
    assert tuple(sum(C[i][j] * R.zeta[j] for j in range(n)) for i in range(n)) == d
    assert strange_formula_residual(tag) == 0


@pytest.mark.parametrize("tag, expected", [("A5", 6), ("D4", 4), ("D7", 4), ("E6", 3), ("E7", 2), ("E8", 1)])
def test_cartan_determinants(tag, expected):
    assert det(cartan_matrix(tag)) == expected


@pytest.mark.parametrize("tag, k", [("A1", 2), ("A6", 7), ("D4", 8), ("D6", 16), ("E6", 24), ("E7", 48), ("E8", 120)])
def test_group_orders(tag, k):
    assert ade_data(tag).k == k


@pytest.mark.parametrize("tag", [t for t in TYPES if t[0] != "A"])
def test_polyhedral_counts(tag):
    P = ade_data(tag).polyhedral
    E, F, V = P.EFV
    assert V - E + F == 2
    assert P.M == ade_data(tag).k // 2 == 2 * E
    p, q, r = P.pqr
    assert Fraction(1, p) + Fraction(1, q) + Fraction(1, r) > 1


def test_bad_tags():
    for bad in ("F4", "A0", "D3", "E9", "a2", ""):
        with pytest.raises(InvalidTypeTag):
            ade_data(bad)


def brute_theta(tag, order):
    R = ade_data(tag)
    shift = [z / R.k for z in R.zeta]
    pts = box_points(R.cartan, shift, 2 * Fraction(order) / R.k)
    exps = Counter()
    for m in pts:
        x = [int(a) + s for a, s in zip(m, shift)]
        exps[R.k * bilinear(R.cartan, x, x) / 2] += 1
    return QSeries.from_exponents(dict(exps), order)


@pytest.mark.parametrize("tag, order", [("A1", 30), ("A2", 20), ("A3", 12), ("D4", 14)])
def test_theta_matches_brute_force(tag, order):
    assert theta_series(tag, order) == brute_theta(tag, order)


@pytest.mark.parametrize("tag", ["A4", "D5", "E6"])
def test_theta_independent_of_node_ordering(tag):
    R = ade_data(tag)
    perm = list(range(R.rank))
    random.Random(7).shuffle(perm)
    C = [[R.cartan[perm[i]][perm[j]] for j in range(R.rank)] for i in range(R.rank)]
    shift = [R.zeta[perm[i]] / R.k for i in range(R.rank)]
    order = R.minimal_exponent + 15
    assert shifted_theta_series(C, shift, R.k, order) == theta_series(tag, order)


@pytest.mark.parametrize("tag", ["A3", "D4", "E7"])
def test_reflections_preserve_the_form(tag):
    R = ade_data(tag)
    rng = random.Random(3)
    for _ in range(20):
        x = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(R.rank)]
        i = rng.randrange(R.rank)
        y = simple_reflection(R.cartan, i, x)
        assert bilinear(R.cartan, y, y) == bilinear(R.cartan, x, x)
        assert simple_reflection(R.cartan, i, y) == tuple(x)


@pytest.mark.parametrize("tag", ["A1", "A3", "A6", "D4", "D5", "D7", "E6", "E7"])
def test_theta_eta_identity(tag):
    R = ade_data(tag)
    assert theta_eta_identity_residual(tag, R.minimal_exponent + 30).is_zero()


def test_identity_fails_for_wrong_counts():
    assert not theta_eta_identity_residual("D5", 30, efv=(4, 2, 4)).is_zero()


def test_minimal_exponent_values():
    # leading exponent of theta_Delta is (k(n+1) - 1)/24
    for tag in ("A1", "D4", "E8"):
        R = ade_data(tag)
        f = theta_series(tag, R.minimal_exponent + 1)
        assert f.valuation() == Fraction(R.k * (R.rank + 1) - 1, 24)
        assert f.leading_coefficient() == 1


def test_rank_twelve_enumeration_runs():
    f = theta_series("A12", ade_data("A12").minimal_exponent + 4)
    assert not f.is_zero()
    assert list(itertools.islice(f.exponents().values(), 1)) == [1]
