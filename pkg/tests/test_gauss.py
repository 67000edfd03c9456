"""Sampler distribution checks against direct-summation oracles."""

import math
from itertools import permutations

import numpy as np
import pytest
from scipy.stats import chi2

import gadgetforge as gf
from gadgetforge.gauss import SQRT_2PI, sample_coset_many, sample_z_many

from conftest import make_rng


def exact_pmf(width, center, tailcut=10.0):
    """Support and probabilities of the tail-truncated discrete Gaussian."""
    std = width / SQRT_2PI
    lo = math.ceil(center - tailcut * std)
    hi = math.floor(center + tailcut * std)
    xs = np.arange(lo, hi + 1)
    w = np.exp(-np.pi * (xs - center) ** 2 / width ** 2)
    return xs, w / w.sum()


def test_params_validation():
    with pytest.raises(ValueError):
        gf.GaussParams(sigma_width=0.0)
    with pytest.raises(ValueError):
        gf.GaussParams(sigma_width=1.0, tailcut=3.0)


def test_degenerate_width_returns_center():
    rng = make_rng(b"degenerate")
    params = gf.GaussParams(sigma_width=1e-3, center=7.0)
    assert all(gf.sample_z(params, rng) == 7 for _ in range(50))


def test_tailcut_contract():
    rng = make_rng(b"tailcut")
    width = 10.22 * SQRT_2PI
    std = width / SQRT_2PI
    for center in (0.0, 0.37, -12.6):
        xs = sample_z_many(width, np.full(20000, center), rng)
        assert np.all(np.abs(xs - center) <= 10 * std + 1e-9)


def test_variance_matches_width_convention():
    rng = make_rng(b"variance")
    xs = sample_z_many(449.8, np.zeros(100000), rng)
    target = 449.8 ** 2 / (2 * math.pi)      # 32198
    assert abs(target - 32198) < 3
    assert abs(xs.var() - target) <= 0.03 * target


def test_chi_square_goodness_of_fit():
    rng = make_rng(b"chi2")
    N = 100000
    for width in (1.28, 10.22, 449.8):
        for center in (0.0, 0.37):
            xs, probs = exact_pmf(width, center)
            samples = sample_z_many(width, np.full(N, center), rng)
            counts = np.bincount(samples - xs[0], minlength=len(xs)).astype(float)
            # pool cells so every expected count is reasonably large
            order = np.argsort(probs)[::-1]
            exp_sorted = probs[order] * N
            obs_sorted = counts[order]
            keep = exp_sorted >= 10
            obs = np.append(obs_sorted[keep], obs_sorted[~keep].sum())
            exp = np.append(exp_sorted[keep], exp_sorted[~keep].sum())
            obs, exp = obs[exp > 0], exp[exp > 0]
            stat = ((obs - exp) ** 2 / exp).sum()
            crit = chi2.isf(1e-3, len(obs) - 1)
            assert stat <= crit, (width, center, stat, crit)


def test_coset_congruence_forced():
    rng = make_rng(b"coset-cong")
    r = 10.22
    xs = sample_coset_many(8, np.zeros(2000, dtype=np.int64), r, rng)
    assert np.all(xs % 8 == 0)
    xs = sample_coset_many(8, np.full(2000, 5, dtype=np.int64), r, rng)
    assert np.all(xs % 8 == 5)


def test_coset_mean_matches_direct_summation():
    rng = make_rng(b"coset-mean")
    q, c, r = 8, 5, 10.22
    # oracle: exact mean of D_{8Z+5, r} by summation over +-10 sigma
    std = r / SQRT_2PI
    ks = np.arange(math.ceil((-10 * std - c) / q),
                   math.floor((10 * std - c) / q) + 1)
    xs = q * ks + c
    w = np.exp(-np.pi * xs.astype(float) ** 2 / r ** 2)
    exact_mean = float((xs * w).sum() / w.sum())
    samples = sample_coset_many(q, np.full(100000, c, dtype=np.int64), r, rng)
    assert abs(samples.mean() - exact_mean) <= 0.06


def test_coset_invalid_q():
    with pytest.raises(ValueError):
        gf.sample_coset(0, 1, 10.0, make_rng(b"x"))


def test_ternary_forced_and_counts():
    rng = make_rng(b"ternary")
    v = gf.sample_ternary(gf.TernaryShape(4, 4, 0), rng)
    assert list(v) == [1, 1, 1, 1]
    v = gf.sample_ternary(gf.TernaryShape(701, 176, 175), rng)
    assert v.sum() == 1 and (v != 0).sum() == 351
    assert int(v @ np.ones(701, dtype=np.int64)) == 176 - 175


def test_ternary_shape_validation():
    with pytest.raises(ValueError):
        gf.TernaryShape(4, 3, 2)


def test_ternary_uniform_over_arrangements():
    rng = make_rng(b"ternary-uniform")
    arrangements = sorted(set(permutations([1, -1, 0, 0])))
    assert len(arrangements) == 12
    index = {a: i for i, a in enumerate(arrangements)}
    counts = np.zeros(12)
    N = 100000
    shape = gf.TernaryShape(4, 1, 1)
    for _ in range(N):
        counts[index[tuple(gf.sample_ternary(shape, rng))]] += 1
    freq = counts / N
    assert np.all(np.abs(freq - 1 / 12) <= 0.01)


def test_deterministic_streams():
    a = sample_z_many(10.22, np.zeros(64), make_rng(b"same-seed"))
    b = sample_z_many(10.22, np.zeros(64), make_rng(b"same-seed"))
    assert np.array_equal(a, b)
    c = sample_z_many(10.22, np.zeros(64), make_rng(b"other-seed"))
    assert not np.array_equal(a, c)
