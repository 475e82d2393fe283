from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import naive_eta_series, naive_partitions
from etaforge.lattice import EnumerationBudgetExceeded
from etaforge.orbifold import (
    colored_partitions,
    cyclic_hilb_oracle,
    local_eta_quotient,
    local_Z_eta,
    local_Z_mckay,
    local_Z_theta,
    nakajima_coefficient,
    nakajima_multivariate,
    nakajima_specialized,
    partitions_up_to,
)
from etaforge.rootsys import ade_data


@pytest.mark.parametrize("tag", ["A1", "A2", "A4", "D4", "D5", "D6", "E6", "E7", "E8"])
def test_all_routes_agree(tag):
    order = 30
    ref = local_Z_eta(tag, order)
    assert ref == naive_eta_series(local_eta_quotient(tag).factors, order)
    assert local_Z_theta(tag, order) == ref
    assert nakajima_specialized(tag, order) == ref
    if ade_data(tag).family != "A":
        assert local_Z_mckay(tag, order) == ref


def test_type_a_is_inverse_eta():
    target = naive_eta_series(((1, -1),), 60)
    for n in range(1, 7):
        assert nakajima_specialized(f"A{n}", 60) == target


def test_local_quotient_shapes():
    assert str(local_eta_quotient("A3")) == "1^-1"
    assert str(local_eta_quotient("D4")) == "1^-1 2^2 4^-3 8^1"
    assert local_eta_quotient("E8").weight == Fraction(-1, 2)


def test_mckay_route_rejects_type_a():
    with pytest.raises(ValueError):
        local_Z_mckay("A3", 10)


def test_colored_partitions():
    assert colored_partitions(1, 30) == naive_partitions(30)
    assert colored_partitions(2, 6) == [1, 2, 5, 10, 20, 36]


def test_partitions_generator():
    counts = [0] * 13
    for lam in partitions_up_to(12):
        counts[sum(lam)] += 1
    assert counts == naive_partitions(13)


@pytest.mark.parametrize("k", [2, 3])
def test_oracle_matches_orbifold_series(k):
    assert cyclic_hilb_oracle(k, 12) == nakajima_multivariate(f"A{k - 1}", 12)


def test_oracle_small_values():
    s = cyclic_hilb_oracle(2, 4)
    # (x^2, y) and (x, y^2) are the two invariant ideals with one box of each colour
    assert s.coefficient((1, 1)) == 2
    assert s.coefficient((0, 0)) == 1 and s.coefficient((1, 0)) == 1


def test_oracle_limits():
    with pytest.raises(EnumerationBudgetExceeded):
        cyclic_hilb_oracle(2, 31)
    with pytest.raises(ValueError):
        nakajima_multivariate("A3", 6)


def test_nakajima_coefficient_examples():
    assert nakajima_coefficient("A1", [0], 0) == 1
    assert nakajima_coefficient("A1", [0], 1) == 2
    assert nakajima_coefficient("A2", [1, 0], 1) == 1
    assert nakajima_coefficient("A1", [1], 0) == 0
    with pytest.raises(ValueError):
        nakajima_coefficient("A2", [1], 1)


def test_coefficient_agrees_with_multivariate():
    s = nakajima_multivariate("A2", 9)
    for (e, m1, m2), c in s.terms.items():
        mu = (m1 - e, m2 - e)
        assert nakajima_coefficient("A2", mu, e) == c
