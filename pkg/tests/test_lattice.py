from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from etaforge.lattice import (
    EnumerationBudgetExceeded,
    box_points,
    certified_min_eigenvalue_bound,
    ellipsoid_points,
    exact_ldl_pivots,
)
from etaforge.rootsys import cartan_matrix


def as_set(pts):
    return {tuple(int(x) for x in row) for row in pts}


def random_pd(rng, n):
    while True:
        B = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        G = [[sum(B[k][i] * B[k][j] for k in range(n)) + (2 if i == j else 0) for j in range(n)] for i in range(n)]
        if all(p > 0 for p in exact_ldl_pivots(G)):
            return G


@pytest.mark.parametrize("seed", range(12))
def test_matches_box_oracle_on_random_forms(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    G = random_pd(rng, n)
    shift = [Fraction(rng.randint(-7, 7), rng.randint(1, 6)) for _ in range(n)]
    radius = Fraction(rng.randint(1, 80), rng.randint(1, 3))
    assert as_set(ellipsoid_points(G, shift, radius)) == as_set(box_points(G, shift, radius))


@pytest.mark.parametrize("tag", ["A2", "A3", "D4"])
def test_matches_box_oracle_on_root_lattices(tag):
    C = cartan_matrix(tag)
    shift = [Fraction(1, 3)] * len(C)
    assert as_set(ellipsoid_points(C, shift, 9)) == as_set(box_points(C, shift, 9))


def test_boundary_is_strict():
    # (m + 1/2)^2 < 9/4 keeps m in {-2, -1, 0, 1}; the boundary points are excluded
    pts = ellipsoid_points([[1]], [Fraction(1, 2)], Fraction(9, 4))
    assert as_set(pts) == {(-1,), (0,)}
    pts = ellipsoid_points([[1]], [Fraction(1, 2)], Fraction(9, 4) + Fraction(1, 10**12))
    assert as_set(pts) == {(-2,), (-1,), (0,), (1,)}


def test_empty_radius():
    assert ellipsoid_points([[2]], [0], 0).shape == (0, 1)


def test_budget_exceeded(monkeypatch):
    with pytest.raises(EnumerationBudgetExceeded):
        ellipsoid_points(cartan_matrix("A3"), [0, 0, 0], 50, budget=10)
    monkeypatch.setenv("ETAFORGE_ENUM_BUDGET", "5")
    with pytest.raises(EnumerationBudgetExceeded):
        ellipsoid_points(cartan_matrix("A2"), [0, 0], 50)


def test_certified_eigenvalue_bound():
    for tag in ("A4", "D5", "E8"):
        C = cartan_matrix(tag)
        lam = certified_min_eigenvalue_bound(C)
        assert 0 < lam <= float(np.linalg.eigvalsh(np.array(C, dtype=float)).min())
