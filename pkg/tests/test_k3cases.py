from __future__ import annotations

import json
from fractions import Fraction

import pytest

from conftest import naive_eta_series
from etaforge.eta import EtaQuotient, eta_quotient_expansion
from etaforge.k3cases import (
    CaseValidationError,
    assemble_global,
    eigenform_check,
    eigenform_check_series,
    global_series,
    hecke_apply,
    load_cases,
    modularity_report,
    parse_case_line,
    stratification_series,
    theta_product_series,
)
from etaforge.qseries import QSeries

# 1/Z for every seed case, assembled by hand from the local factors
EXPECTED_INVERSE = {
    0: "1^24",
    1: "1^8 2^8",
    2: "1^6 3^6",
    3: "2^12",
    4: "1^4 2^2 4^4",
    5: "1^4 5^4",
    7: "1^2 2^2 3^2 6^2",
    8: "1^3 7^3",
    11: "2^4 4^4",
    14: "1^2 2^1 4^1 8^2",
    15: "3^8",
    19: "2^3 6^3",
    25: "4^6",
}


def test_seed_table(seeds):
    assert sorted(seeds) == sorted(EXPECTED_INVERSE)
    for xiao, text in EXPECTED_INVERSE.items():
        assert str(assemble_global(seeds[xiao]).inverse()) == text


@pytest.mark.parametrize("line, a, e", [("1;Z/2;2;8*A1", 8, 16), ("0;trivial;1;", 24, 24), ("8;Z/7;7;3*A6", 3, 6)])
def test_load_examples(line, a, e):
    (c,) = load_cases(line)
    assert c.a == a and c.euler_quotient == e


def test_loader_format():
    text = "# comment\n\n2;Z/3;3;6*A2  # trailing\n3;Z/2xZ/2;4;A1,11*A1\n"
    cases = load_cases(text)
    assert [c.xiao for c in cases] == [2, 3]
    assert cases[1].r == 12 and cases[1].to_line() == "3;Z/2xZ/2;4;12*A1"


@pytest.mark.parametrize("line, invariant", [
    ("11;Z/2xZ/4;8;4*A3,6*A1", "nonnegative integer"),
    ("1;Z/2;2;6*A1", "24 = 24/k"),
    ("4;Z/4;4;4*A3,A2", "k_i divides k"),
    ("90;Z/2;2;8*A1", "0..81"),
    ("1;Z/2;2", "format"),
    ("1;Z/2;2;8*F4", "ADE"),
])
def test_rejections_name_the_invariant(line, invariant):
    with pytest.raises(CaseValidationError) as exc:
        load_cases(line)
    assert invariant in str(exc.value)


def test_error_carries_line_number():
    with pytest.raises(CaseValidationError) as exc:
        load_cases("1;Z/2;2;8*A1\n1;Z/2;2;7*A1")
    assert exc.value.line == 2


def test_record_with_d_type_and_half_integral_weight():
    c = parse_case_line("10;Q8;8;3*A3,2*D4")
    assert c.a == 2 and c.euler_quotient == 7
    assert all(8 % m == 0 for m in assemble_global(c).multipliers())
    rep = modularity_report(c, 20)
    assert rep.passed and rep.weight == Fraction(7, 2)
    assert "informational" in next(ch for ch in rep.checks if ch.name.startswith("eta congruences")).detail
    assert not eigenform_check(c, [3], 40).supported


@pytest.mark.parametrize("xiao", sorted(EXPECTED_INVERSE))
def test_series_routes_agree(seeds, xiao):
    c = seeds[xiao]
    z = global_series(c, 40)
    assert z == naive_eta_series(assemble_global(c).factors, 40)
    assert z == stratification_series(c, 40)
    assert z == theta_product_series(c, 40)


@pytest.mark.parametrize("xiao", sorted(EXPECTED_INVERSE))
def test_modularity_report(seeds, xiao):
    rep = modularity_report(seeds[xiao], 20)
    assert rep.passed, [c for c in rep.checks if not c.passed]
    assert rep.weight == Fraction(seeds[xiao].euler_quotient, 2)
    assert rep.valuation == 1


def test_report_json_shape(seeds):
    d = json.loads(modularity_report(seeds[3], 10).to_json())
    assert {"xiao", "eta_quotient", "weight", "level", "valuation", "cusp_orders", "checks"} <= set(d)
    assert d["eta_quotient"] == "2^12" and d["weight"] == "6"
    orders = dict(d["cusp_orders"])
    assert orders["i∞"] == "1" and orders["0"] == "1"
    assert all({"name", "pass", "detail"} == set(ch) for ch in d["checks"])


def test_hecke_examples():
    assert hecke_apply(QSeries.zero(50), 2, 3, -7).is_zero()
    f = eta_quotient_expansion(EtaQuotient.parse("1^3 7^3"), 100)
    t2 = hecke_apply(f, 2, 3, -7)
    assert t2.order == 50 and t2 == (f * f.coefficient(2)).truncate(50)
    g = eta_quotient_expansion(EtaQuotient.parse("2^12"), 100)
    t3 = hecke_apply(g, 3, 6, 1)
    assert t3 == (g * g.coefficient(3)).truncate(t3.order)


def test_hecke_rejects_fractional_grid():
    with pytest.raises(ValueError):
        hecke_apply(eta_quotient_expansion(EtaQuotient.parse("1^1"), 10), 2, 1, 1)


@pytest.mark.parametrize("xiao, primes", [(8, [2, 3, 5]), (3, [3, 5, 7]), (1, [3, 5]), (15, [2, 5, 7])])
def test_eigenforms(seeds, xiao, primes):
    rep = eigenform_check(seeds[xiao], primes, 100)
    assert rep.passed


def test_primes_dividing_level_are_skipped(seeds):
    rep = eigenform_check(seeds[8], [7], 60)
    assert rep.passed and 7 not in rep.eigenvalues


def test_perturbed_series_fails():
    f = eta_quotient_expansion(EtaQuotient.parse("1^3 7^3"), 100) + QSeries.monomial(2, 1, 100)
    rep = eigenform_check_series(f, 7, 3, -7, [2])
    assert not rep.passed
    assert not next(c for c in rep.checks if c.name == "T_2 eigenvector").passed


def test_half_integral_weight_unsupported():
    f = eta_quotient_expansion(EtaQuotient.parse("1^1 23^1"), 50)
    rep = eigenform_check_series(f, 23, Fraction(1), None, [2])
    assert not rep.supported and not rep.passed
