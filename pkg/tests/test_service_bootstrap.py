"""Tests for bootstrap replication and the percentile, basic and BCa intervals."""
import numpy as np
import pytest

from confint.models.intervals import BootKind, Sample
from confint.numerics.rng import RngStream
from confint.services.bootstrap import (
    BootstrapReplicates,
    basic_interval,
    bca_interval,
    bca_levels,
    boot_distribution,
    boot_interval,
    empirical_quantile,
    percentile_interval,
    resample,
)
from confint.services.estimators import EXP_RATE, MEAN
from confint.utils.errors import DegenerateBootstrapError, DomainError


# ── empirical quantile ─────────────────────────────────────────────────


def test_quantile_rank_rule():
    reps = np.arange(1.0, 10.0)  # r = 9
    assert empirical_quantile(reps, 0.5) == 5.0
    assert empirical_quantile(reps, 0.025) == 1.0
    assert empirical_quantile(reps, 0.975) == 9.0


def test_quantile_exact_rank_is_not_rounded_up():
    reps = np.arange(1.0, 1000.0)  # r = 999, (r + 1) q is an integer
    assert empirical_quantile(reps, 0.025) == 25.0
    assert empirical_quantile(reps, 0.975) == 975.0


def test_quantile_batched_with_per_row_levels():
    batch = np.array([np.arange(1.0, 10.0), np.arange(11.0, 20.0)])
    np.testing.assert_array_equal(empirical_quantile(batch, np.array([0.5, 0.1])), [5.0, 11.0])
    np.testing.assert_array_equal(empirical_quantile(batch, 0.5), [5.0, 15.0])


# ── replication ────────────────────────────────────────────────────────


def test_resample_draws_from_sample(skewed_sample, rng):
    drawn = resample(skewed_sample, rng)
    assert drawn.n == skewed_sample.n
    assert set(drawn.values) <= set(skewed_sample.values)


def test_same_seed_same_interval(skewed_sample):
    a = boot_distribution(skewed_sample, MEAN, 500, RngStream(99))
    b = boot_distribution(skewed_sample, MEAN, 500, RngStream(99))
    np.testing.assert_array_equal(a.replicates, b.replicates)
    assert percentile_interval(a) == percentile_interval(b)


def test_different_seed_different_replicates(skewed_sample):
    a = boot_distribution(skewed_sample, MEAN, 200, RngStream(1))
    b = boot_distribution(skewed_sample, MEAN, 200, RngStream(2))
    assert not np.array_equal(a.replicates, b.replicates)


def test_distribution_shape(skewed_sample, rng):
    reps = boot_distribution(skewed_sample, MEAN, 300, rng)
    assert reps.r == 300
    assert reps.theta_hat == pytest.approx(skewed_sample.mean)
    assert np.all(reps.replicates >= min(skewed_sample.values))
    assert np.all(reps.replicates <= max(skewed_sample.values))
    assert np.all(np.diff(reps.sorted()) >= 0)


def test_plain_estimator_matches_batched(skewed_sample):
    batched = boot_distribution(skewed_sample, MEAN, 100, RngStream(5))
    plain = boot_distribution(skewed_sample, lambda s: s.mean, 100, RngStream(5))
    np.testing.assert_allclose(plain.replicates, batched.replicates, rtol=1e-12)


def test_distribution_needs_rng(skewed_sample):
    with pytest.raises(DomainError):
        boot_distribution(skewed_sample, MEAN, 100, None)
    with pytest.raises(DomainError):
        boot_distribution(skewed_sample, MEAN, 0, RngStream(1))


# ── intervals ──────────────────────────────────────────────────────────


def test_basic_reflects_percentile(skewed_sample, rng):
    reps = boot_distribution(skewed_sample, MEAN, 999, rng)
    pct = percentile_interval(reps)
    basic = basic_interval(reps)
    assert basic.lower == pytest.approx(2 * reps.theta_hat - pct.upper)
    assert basic.upper == pytest.approx(2 * reps.theta_hat - pct.lower)
    assert basic.length == pytest.approx(pct.length)
    assert (pct.method, basic.method) == ("boot-percentile", "boot-basic")


def test_bca_equals_percentile_without_bias_or_skew():
    sample = Sample.of([-2.0, -1.0, 0.0, 1.0, 2.0])
    half = np.arange(1, 501) / 500.0
    reps = BootstrapReplicates(theta_hat=0.0, replicates=np.concatenate([-half, half]))
    bca = bca_interval(reps, sample, MEAN)
    pct = percentile_interval(reps)
    assert (bca.lower, bca.upper) == (pct.lower, pct.upper)
    assert bca.method == "boot-bca"


def test_bca_ties_count_half():
    sorted_reps = np.array([1.0, 2.0, 2.0, 3.0])
    jack = np.array([1.0, 1.0, 1.0])
    a1, a2 = bca_levels(sorted_reps, 2.0, jack, 0.1)
    assert a1 == pytest.approx(0.05, abs=1e-12)
    assert a2 == pytest.approx(0.95, abs=1e-12)


def test_bca_shifts_toward_skew(skewed_sample, rng):
    reps = boot_distribution(skewed_sample, EXP_RATE, 999, rng)
    bca = bca_interval(reps, skewed_sample, EXP_RATE)
    pct = percentile_interval(reps)
    assert bca.lower <= bca.upper
    assert (bca.lower, bca.upper) != (pct.lower, pct.upper)


def test_bca_all_replicates_on_one_side():
    reps = BootstrapReplicates(theta_hat=0.0, replicates=np.arange(1.0, 11.0))
    with pytest.raises(DegenerateBootstrapError, match="one side"):
        bca_interval(reps, Sample.of([0.5, 1.5, 2.5]), MEAN)


@pytest.mark.parametrize("kind", list(BootKind))
def test_interval_ignores_replicate_order(kind, skewed_sample, rng):
    reps = boot_distribution(skewed_sample, EXP_RATE, 999, rng)
    shuffled = BootstrapReplicates(
        theta_hat=reps.theta_hat,
        replicates=np.random.default_rng(5).permutation(reps.replicates),
    )
    a = boot_interval(kind, reps, skewed_sample, EXP_RATE)
    b = boot_interval(kind, shuffled, skewed_sample, EXP_RATE)
    assert (a.lower, a.upper) == (b.lower, b.upper)


def test_interval_needs_two_replicates():
    reps = BootstrapReplicates(theta_hat=0.0, replicates=np.array([1.0]))
    with pytest.raises(DomainError):
        percentile_interval(reps)


@pytest.mark.parametrize("kind", list(BootKind))
def test_dispatch(kind, skewed_sample, rng):
    reps = boot_distribution(skewed_sample, MEAN, 200, rng)
    interval = boot_interval(kind.value, reps, skewed_sample, MEAN, 0.1)
    assert interval.method == kind.tag
    assert interval.level == pytest.approx(0.9)
