"""Shared naive oracles: deliberately slow, written without the library's recurrences."""

from __future__ import annotations

from fractions import Fraction

import pytest


def naive_eta_product(factors, length):
    """Coefficients of prod_m prod_n (1 - q^(mn))^(r_m) by repeated polynomial multiplication."""
    p = [1] + [0] * (length - 1)
    for m, r in factors:
        n = 1
        while m * n < length:
            step = m * n
            for _ in range(abs(r)):
                if r > 0:
                    for i in range(length - 1, step - 1, -1):
                        p[i] -= p[i - step]
                else:
                    for i in range(step, length):
                        p[i] += p[i - step]
            n += 1
    return p


def naive_partitions(length):
    p = [1] + [0] * (length - 1)
    for part in range(1, length):
        for i in range(part, length):
            p[i] += p[i - part]
    return p


def naive_eta_series(factors, order):
    """Exponent map of the eta quotient below ``order`` using the naive product."""
    from etaforge import QSeries

    order = Fraction(order)
    v = Fraction(sum(m * r for m, r in factors), 24)
    length = max(int(-((v - order) // 1)), 0)
    coeffs = naive_eta_product(factors, length)
    return QSeries.from_exponents({v + i: c for i, c in enumerate(coeffs)}, order)


@pytest.fixture(scope="session")
def seeds():
    from etaforge import seed_cases

    return {c.xiao: c for c in seed_cases()}


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s[7:9])):
            terminalreporter.write_line(line)
