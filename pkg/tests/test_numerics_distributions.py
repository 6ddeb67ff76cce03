"""Tests for binomial, normal, Student-t and beta distribution functions."""
import math

import numpy as np
import pytest

from confint.numerics.distributions import (
    beta_quantile,
    binom_cdf,
    binom_pmf,
    binom_pmf_table,
    normal_cdf,
    normal_pdf,
    normal_quantile,
    t_cdf,
    t_quantile,
)
from confint.utils.errors import DomainError


def _direct_pmf(k, n, p):
    return math.comb(n, k) * p**k * (1 - p) ** (n - k)


# ── binomial ───────────────────────────────────────────────────────────


def test_binom_pmf_matches_direct_formula():
    for k in (0, 3, 10, 20):
        assert binom_pmf(k, 20, 0.3) == pytest.approx(_direct_pmf(k, 20, 0.3), rel=1e-11)


def test_binom_pmf_degenerate_p():
    assert binom_pmf(0, 5, 0.0) == 1.0
    assert binom_pmf(1, 5, 0.0) == 0.0
    assert binom_pmf(5, 5, 1.0) == 1.0
    assert binom_pmf(4, 5, 1.0) == 0.0


def test_binom_pmf_table_rows_sum_to_one():
    p = np.array([0.0, 0.1, 0.5, 0.93, 1.0])
    table = binom_pmf_table(30, p)
    assert table.shape == (5, 31)
    np.testing.assert_allclose(table.sum(axis=1), 1.0, atol=1e-12)
    assert table[0, 0] == pytest.approx(1.0)
    assert table[-1, -1] == pytest.approx(1.0)
    assert table[2, 15] == pytest.approx(_direct_pmf(15, 30, 0.5), rel=1e-11)


def test_binom_cdf_matches_pmf_sum():
    n, p = 25, 0.37
    running = 0.0
    for k in range(n + 1):
        running += _direct_pmf(k, n, p)
        assert binom_cdf(k, n, p) == pytest.approx(running, rel=1e-10, abs=1e-15)


def test_binom_cdf_keeps_tiny_lower_tail():
    # P(K = 0) for Binomial(100, 0.99) is 1e-200
    assert binom_cdf(0, 100, 0.99) == pytest.approx(1e-200, rel=1e-8)


def test_binom_cdf_at_n_is_one():
    assert binom_cdf(7, 7, 0.4) == 1.0


@pytest.mark.parametrize("k,n,p", [(-1, 5, 0.5), (6, 5, 0.5), (2, 0, 0.5), (2, 5, 1.2)])
def test_binom_domain_errors(k, n, p):
    with pytest.raises(DomainError):
        binom_cdf(k, n, p)


# ── normal ─────────────────────────────────────────────────────────────


def test_normal_cdf_known_values():
    assert normal_cdf(0.0) == 0.5
    assert normal_cdf(1.959963984540054) == pytest.approx(0.975, abs=1e-14)
    assert normal_cdf(-1.0) == pytest.approx(0.15865525393145707, rel=1e-13)


def test_normal_pdf_at_zero():
    assert normal_pdf(0.0) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi))


def test_normal_quantile_known_values():
    assert normal_quantile(0.975) == pytest.approx(1.959963984540054, abs=1e-12)
    assert normal_quantile(0.5) == 0.0
    assert normal_quantile(0.025) == pytest.approx(-1.959963984540054, abs=1e-12)


@pytest.mark.parametrize("x", np.linspace(-6.0, 5.0, 23))
def test_normal_quantile_inverts_cdf(x):
    assert normal_quantile(normal_cdf(x)) == pytest.approx(x, abs=1e-9)


@pytest.mark.parametrize("q", [0.0, 1.0, -0.2, 1.5])
def test_normal_quantile_rejects_boundary(q):
    with pytest.raises(DomainError):
        normal_quantile(q)


# ── Student t ──────────────────────────────────────────────────────────


@pytest.mark.parametrize("x", [-30.0, -2.0, -0.3, 0.0, 0.7, 4.0, 100.0])
def test_t_cdf_cauchy_closed_form(x):
    assert t_cdf(x, 1) == pytest.approx(0.5 + math.atan(x) / math.pi, abs=1e-13)


@pytest.mark.parametrize("x", [-5.0, -1.0, 0.2, 1.3, 8.0])
def test_t_cdf_two_df_closed_form(x):
    assert t_cdf(x, 2) == pytest.approx(0.5 + x / (2.0 * math.sqrt(2.0 + x * x)), abs=1e-13)


def test_t_cdf_infinite_arguments():
    assert t_cdf(math.inf, 3) == 1.0
    assert t_cdf(-math.inf, 3) == 0.0


def test_t_quantile_known_values():
    assert t_quantile(0.975, 1) == pytest.approx(12.706204736174705, rel=1e-9)
    assert t_quantile(0.975, 10) == pytest.approx(2.2281388519649385, rel=1e-9)
    assert t_quantile(0.025, 10) == pytest.approx(-2.2281388519649385, rel=1e-9)
    assert t_quantile(0.5, 4) == 0.0


@pytest.mark.parametrize("df", [1, 3, 19, 99])
@pytest.mark.parametrize("x", [-5.0, -1.5, 0.4, 2.0, 5.0])
def test_t_quantile_inverts_cdf(x, df):
    assert t_quantile(t_cdf(x, df), df) == pytest.approx(x, abs=1e-8)


def test_t_quantile_large_df():
    assert t_quantile(0.975, 1000) == pytest.approx(1.962339, abs=2e-6)
    assert t_quantile(0.975, 1000) > normal_quantile(0.975)


@pytest.mark.parametrize("df", [1, 2, 5, 30, 200])
@pytest.mark.parametrize("q", [0.6, 0.9, 0.975, 0.999])
def test_t_quantile_exceeds_normal_in_upper_half(q, df):
    assert t_quantile(q, df) > normal_quantile(q)


def test_t_rejects_df_below_one():
    with pytest.raises(DomainError):
        t_cdf(1.0, 0.5)
    with pytest.raises(DomainError):
        t_quantile(0.9, 0)


# ── beta ───────────────────────────────────────────────────────────────


def test_beta_quantile_inverts_known_cdf():
    assert beta_quantile(0.5248, 2.0, 3.0) == pytest.approx(0.4, abs=1e-12)


def test_beta_quantile_uniform():
    assert beta_quantile(0.3, 1.0, 1.0) == pytest.approx(0.3, abs=1e-13)


def test_beta_quantile_endpoints():
    assert beta_quantile(0.0, 2.0, 5.0) == 0.0
    assert beta_quantile(1.0, 2.0, 5.0) == 1.0


def test_beta_quantile_domain():
    with pytest.raises(DomainError):
        beta_quantile(0.5, 0.0, 1.0)
    with pytest.raises(DomainError):
        beta_quantile(1.1, 1.0, 1.0)
