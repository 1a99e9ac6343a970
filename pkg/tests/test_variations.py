"""Length equalization, smoothing, bootstrap, and pooling."""

from collections import Counter

import numpy as np
import pytest

from deconvsim import (
    EqualizeStrategy,
    PoolingMode,
    SmoothingSpec,
    bootstrap_sample,
    equalize_lengths,
    make_rng,
    perturb,
    pool_average,
    pool_concat,
)
from deconvsim.errors import InvalidInputError


def test_bootstrap_strategy_needs_a_target():
    with pytest.raises(InvalidInputError):
        EqualizeStrategy.bootstrap(0)


def test_non_bootstrap_strategies_take_no_target():
    from deconvsim.variations import EqualizeKind

    with pytest.raises(InvalidInputError):
        EqualizeStrategy(EqualizeKind.TILE, target=5)


@pytest.mark.parametrize(
    "strategy", [EqualizeStrategy.tile(), EqualizeStrategy.subsample()]
)
def test_equal_lengths_pass_through(strategy):
    x = np.array([1.0, 2.0])
    z = np.array([3.0, 4.0])
    x2, z2 = equalize_lengths(x, z, strategy, make_rng(0))
    assert np.array_equal(x2, x) and np.array_equal(z2, z)


def test_tile_repeats_whole_then_tops_up():
    x = np.array([10.0, 20.0, 30.0])
    z = np.arange(8.0)
    x2, z2 = equalize_lengths(x, z, EqualizeStrategy.tile(), make_rng(1))
    assert x2.size == 8 and np.array_equal(z2, z)
    counts = Counter(x2)
    # 8 = 2*3 + 2: each element twice, two elements a third time.
    assert set(counts.values()) <= {2, 3}
    assert sum(counts.values()) == 8
    assert set(counts) == {10.0, 20.0, 30.0}


def test_subsample_shrinks_the_longer_vector():
    x = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
    z = np.array([7.0, 8.0, 9.0])
    x2, z2 = equalize_lengths(x, z, EqualizeStrategy.subsample(), make_rng(2))
    assert np.array_equal(z2, z)
    assert x2.size == 3
    assert set(x2) <= set(x)
    assert len(set(x2)) == 3  # without replacement


def test_bootstrap_resamples_both_to_target():
    x = np.array([1.0, 2.0])
    z = np.array([5.0, 6.0, 7.0])
    x2, z2 = equalize_lengths(x, z, EqualizeStrategy.bootstrap(10), make_rng(3))
    assert x2.size == z2.size == 10
    assert set(x2) <= set(x) and set(z2) <= set(z)


def test_perturb_sd_zero_is_identity():
    v = np.array([1.0, 2.0, 3.0])
    assert np.array_equal(perturb(v, 0.0, make_rng(0)), v)


def test_perturb_rejects_negative_sd():
    with pytest.raises(InvalidInputError):
        perturb([1.0], -0.1, make_rng(0))


def test_perturb_noise_moments():
    v = np.zeros(10_000)
    out = perturb(v, 0.1, make_rng(7))
    noise = out - v
    assert abs(noise.mean()) <= 3 * 0.1 / 100  # 3 sd of the mean
    assert np.var(noise) == pytest.approx(0.01, rel=0.10)


def test_bootstrap_sample_single_source_value():
    assert np.array_equal(bootstrap_sample([7.0], 4, make_rng(0)), [7.0] * 4)


def test_bootstrap_sample_closure_and_errors():
    v = np.array([1.0, 4.0, 9.0])
    out = bootstrap_sample(v, 50, make_rng(1))
    assert set(out) <= set(v)
    with pytest.raises(InvalidInputError):
        bootstrap_sample(v, 0, make_rng(1))


def test_bootstrap_sample_distinct_coverage_fraction():
    # Fraction of source elements hit by an n-out-of-n bootstrap:
    # 1 - (1 - 1/n)^n = 0.634 for n = 100.
    rng = make_rng(12)
    v = np.arange(100.0)
    fractions = [len(set(bootstrap_sample(v, 100, rng))) / 100 for _ in range(300)]
    assert np.mean(fractions) == pytest.approx(0.634, abs=0.02)


def test_smoothing_rejects_negative_sd():
    with pytest.raises(InvalidInputError):
        SmoothingSpec(xi_sd=-1.0)


def test_smoothing_warns_when_variances_do_not_add_up():
    with pytest.warns(UserWarning, match="biased"):
        SmoothingSpec(xi_sd=0.1, eta_sd=0.1, zeta_sd=0.1)


def test_smoothing_balanced_config_is_silent():
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        spec = SmoothingSpec(xi_sd=0.3, eta_sd=0.4, zeta_sd=0.5)
    assert spec.active


def test_smoothing_inactive_when_all_zero():
    assert not SmoothingSpec().active


def test_pooling_burn_in_must_be_nonnegative():
    with pytest.raises(InvalidInputError):
        PoolingMode(burn_in=-1)


def test_pool_average_single_iterate_is_itself():
    ys = [np.array([0.0, 2.0])]
    assert np.array_equal(pool_average(ys, 0), ys[0])


def test_pool_average_elementwise_mean():
    ys = [np.array([0.0, 2.0]), np.array([2.0, 4.0])]
    assert np.array_equal(pool_average(ys, 0), [1.0, 3.0])


def test_pool_average_respects_burn_in_and_stays_ascending():
    ys = [np.array([9.0, 10.0]), np.array([0.0, 2.0]), np.array([2.0, 4.0])]
    out = pool_average(ys, 1)
    assert np.array_equal(out, [1.0, 3.0])
    assert np.all(np.diff(out) >= 0)


def test_pool_concat_multiset_and_length():
    ys = [np.array([0.0, 2.0]), np.array([1.0, 3.0])]
    out = pool_concat(ys, 0)
    assert sorted(out) == [0.0, 1.0, 2.0, 3.0]
    assert out.size == 4
    assert np.mean(out) == pytest.approx(np.mean([y.mean() for y in ys]))


@pytest.mark.parametrize("pool", [pool_average, pool_concat])
def test_pooling_rejects_burn_in_eating_everything(pool):
    ys = [np.array([0.0]), np.array([1.0])]
    with pytest.raises(InvalidInputError):
        pool(ys, 2)
