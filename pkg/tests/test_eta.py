from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import naive_eta_series, naive_partitions
from etaforge.eta import (
    EtaQuotient,
    LevelError,
    cusp_orders,
    eta_expansion,
    eta_quotient_expansion,
    eta_quotient_expansion_by_products,
    eta_quotient_metadata,
    gamma0_cusps,
    gamma0_index,
    kronecker,
)

# frozen from naive_eta_product; first coefficients starting at the valuation
FROZEN = {
    "1^24": [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612],
    "1^3 7^3": [1, -3, 0, 5, 0, 0, -7, -3, 9, 0, -6, 0],
    "1^8 2^8": [1, -8, 12, 64, -210, -96, 1016, -512, -2043, 1680, 1092, 768],
    "2^12": [1, 0, -12, 0, 54, 0, -88, 0, -99, 0, 540, 0],
    "1^4 2^2 4^4": [1, -4, 0, 16, -14, 0, 0, -64, 81, 56, 0, 0],
}


def pentagonal(length):
    out = [0] * length
    k = 0
    while True:
        hit = False
        for kk in {k, -k}:
            e = kk * (3 * kk - 1) // 2
            if e < length:
                out[e] += (-1) ** kk
                hit = True
        if not hit:
            return out
        k += 1


def test_eta_matches_pentagonal_numbers():
    f = eta_expansion(200)
    assert f.coefficient_list(Fraction(1, 24))[:199] == pentagonal(199)


def test_inverse_eta_counts_partitions():
    f = eta_quotient_expansion(EtaQuotient.parse("1^-1"), 150)
    assert f.coefficient_list(Fraction(-1, 24))[:150] == naive_partitions(150)


@pytest.mark.parametrize("text", sorted(FROZEN))
def test_frozen_expansions(text):
    eq = EtaQuotient.parse(text)
    f = eta_quotient_expansion(eq, eq.valuation + len(FROZEN[text]))
    assert f.coefficient_list(eq.valuation) == FROZEN[text]


@pytest.mark.parametrize("text", ["1^-3 2^5 4^-2", "1^2 3^-1 6^4", "2^-7 5^3", "1^-24", "4^6"])
def test_fast_route_matches_naive_and_products(text):
    eq = EtaQuotient.parse(text)
    order = eq.valuation + 40
    fast = eta_quotient_expansion(eq, order)
    assert fast == naive_eta_series(eq.factors, order)
    assert fast == eta_quotient_expansion_by_products(eq, order)


def test_triple_product_cube():
    # eta^3 = sum_n (-1)^n (2n+1) q^((2n+1)^2/8)
    f = eta_quotient_expansion(EtaQuotient.parse("1^3"), 60)
    expected = {Fraction((2 * n + 1) ** 2, 8): (-1) ** n * (2 * n + 1) for n in range(30)
                if Fraction((2 * n + 1) ** 2, 8) < 60}
    assert f.exponents() == expected


def test_parse_and_algebra():
    a = EtaQuotient.parse("1^8 2^8")
    assert str(a) == "1^8 2^8" and a.weight == 8 and a.valuation == 1
    assert str(EtaQuotient.parse("4")) == "4^1"
    assert (a / a).is_one()
    assert str(EtaQuotient.parse("1^-1").rescale(7)) == "7^-1"
    with pytest.raises(ValueError):
        EtaQuotient.parse("2^1").rescale(Fraction(1, 4))


def test_metadata_examples():
    m = eta_quotient_metadata(EtaQuotient.parse("1^8 2^8"), 2)
    assert m.weight == 8 and m.congruences_hold and m.character_discriminant == 1
    m = eta_quotient_metadata(EtaQuotient.parse("1^4 2^2 4^4"), 4)
    assert m.weight == 5 and m.congruences_hold and m.character_discriminant == -4
    m = eta_quotient_metadata(EtaQuotient.parse("1^3 7^3"), 7)
    assert m.character_discriminant == -7
    m = eta_quotient_metadata(EtaQuotient.parse("1^1"), 1)
    assert not m.integer_weight and m.multiplier_system_flag and m.character_discriminant is None


def test_cusps_of_gamma0():
    for N in range(1, 40):
        # number of cusps is sum_{c | N} phi(gcd(c, N/c))
        assert len(set(gamma0_cusps(N))) == len(gamma0_cusps(N))
    assert len(gamma0_cusps(16)) == 6
    assert gamma0_index(12) == 24 and gamma0_index(7) == 8


def test_cusp_orders_examples():
    orders = dict(cusp_orders(EtaQuotient.parse("1^4 2^2 4^4"), 4))
    assert orders == {Fraction(0): 1, Fraction(1, 2): Fraction(1, 2), Fraction(1, 4): 1}
    assert [o for _, o in cusp_orders(EtaQuotient.parse("2^12"), 4)] == [1, 1, 1]


@pytest.mark.parametrize("text, level", [("1^8 2^8", 2), ("1^2 2^1 4^1 8^2", 8), ("2^3 6^3", 12), ("1^24", 1)])
def test_total_cusp_order_valence(text, level):
    eq = EtaQuotient.parse(text)
    total = sum(o for _, o in cusp_orders(eq, level))
    assert total == eq.weight * gamma0_index(level) / 12


def test_level_incompatible():
    with pytest.raises(LevelError):
        cusp_orders(EtaQuotient.parse("1^1 3^1"), 4)


def _legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23])
def test_kronecker_agrees_with_euler_criterion(p):
    for d in range(-40, 41):
        assert kronecker(d, p) == _legendre(d, p)


def test_kronecker_at_two():
    assert [kronecker(d, 2) for d in (1, 5, -7, -4, 8, -3)] == [1, -1, 1, 0, 0, -1]
