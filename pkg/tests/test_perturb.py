"""Perturbation sampling: factorization identities and cross-path checks."""

import math

import numpy as np
import pytest

import gadgetforge as gf
from gadgetforge.gauss import SQRT_2PI
from gadgetforge.perturb import RingTrapdoor, _dense_sigma
from conftest import make_rng


def _toy_trapdoor(kind, n, identity_block, rng, a=5, b=4):
    ctx = gf.RingCtx(n, kind, 1 << 14)
    shape = gf.TernaryShape(n, a, b)
    f = gf.sample_ternary(shape, rng)
    g = gf.sample_ternary(shape, rng)
    return RingTrapdoor(ctx=ctx, g=g, f=f, identity_block=identity_block)


def _widths(td, slack=1.15, r=8.0 * SQRT_2PI, q=4):
    Td = td.dense().astype(float)
    s1 = np.linalg.svd(Td, compute_uv=False)[0]
    rbar = r / q
    s = slack * math.sqrt((r ** 2 + rbar ** 2) * (s1 ** 2 + 1))
    return s, r, rbar


def test_dense_factor_trivial():
    C = gf.build_context(np.zeros((4, 2), dtype=np.int64), 2.0, 1.0, 1.0,
                         mode="DENSE")
    assert np.allclose(C.dense_factor, math.sqrt(3.0) * np.eye(4))


def test_not_positive_definite_raises():
    T = np.eye(3, dtype=np.int64)
    with pytest.raises(gf.NotPositiveDefinite):
        gf.build_context(T, 1.0, 1.0, 0.5, mode="DENSE")
    rng = make_rng(b"npd-spectral")
    td = _toy_trapdoor(gf.RingKind.CYCLO, 8, True, rng, a=3, b=3)
    with pytest.raises(gf.NotPositiveDefinite):
        gf.build_context(td, 2.0, 8.0, 2.0, mode="SPECTRAL")


def test_build_fails_iff_dense_eigenvalue_nonpositive():
    rng = make_rng(b"npd-iff")
    for trial in range(8):
        td = _toy_trapdoor(gf.RingKind.CONV, 13, False, rng)
        Td = td.dense().astype(float)
        s1 = np.linalg.svd(Td, compute_uv=False)[0]
        r = 8.0 * SQRT_2PI
        rbar = r / 4
        # straddle the positivity threshold s^2 = r^2 s1^2 + rbar^2
        crit = math.sqrt(r ** 2 * s1 ** 2 + rbar ** 2)
        for s in (0.98 * crit, 1.02 * crit):
            target = _dense_sigma(Td, s, r) - rbar ** 2 * np.eye(td.m)
            positive = np.linalg.eigvalsh(target).min() > 0
            raised = False
            try:
                gf.build_context(td, s, r, rbar, mode="DENSE")
            except gf.NotPositiveDefinite:
                raised = True
            assert raised == (not positive)
            raised_sp = False
            try:
                gf.build_context(td, s, r, rbar, mode="SPECTRAL")
            except gf.NotPositiveDefinite:
                raised_sp = True
            assert raised_sp == raised


def test_dense_reconstruction_identity():
    rng = make_rng(b"recon")
    td = _toy_trapdoor(gf.RingKind.CONV, 17, False, rng)
    s, r, rbar = _widths(td)
    ctx = gf.build_context(td, s, r, rbar, mode="DENSE")
    sigma = _dense_sigma(td.dense().astype(float), s, r)
    recon = ctx.dense_factor @ ctx.dense_factor.T + rbar ** 2 * np.eye(td.m)
    rel = np.linalg.norm(recon - sigma) / np.linalg.norm(sigma)
    assert rel <= 1e-8


def test_spectral_blocks_match_dense_spectrum():
    """Per-frequency factors reconstruct the same covariance as the dense
    assembly (unitary equivalence of the block-circulant splitting)."""
    rng = make_rng(b"blocks")
    for kind, n, ident in ((gf.RingKind.CONV, 17, False),
                           (gf.RingKind.CYCLO, 16, True)):
        td = _toy_trapdoor(kind, n, ident, rng)
        s, r, rbar = _widths(td)
        ctxp = gf.build_context(td, s, r, rbar, mode="SPECTRAL")
        V = td.embed_blocks()
        d = td.nblocks
        for j in (0, 1, n // 2):
            S = (s * s - rbar * rbar) * np.eye(d) \
                - r * r * np.outer(V[j], V[j].conj())
            C = ctxp.spectral_chol[j]
            assert np.allclose(C @ C.conj().T, S, rtol=1e-10, atol=1e-8)


def test_zero_trapdoor_variance():
    rng = make_rng(b"var0")
    s = 40.0
    ctx = gf.build_context(np.zeros((8, 3), dtype=np.int64), s, 5.0, 2.5,
                           mode="DENSE")
    xs = gf.sample_perturbation(ctx, rng, count=100000)
    target = s * s / (2 * math.pi)
    assert np.all(np.abs(xs.var(axis=0) - target) <= 0.03 * target)
    assert np.all(np.abs(xs.mean(axis=0)) <= 4 * math.sqrt(target / len(xs)))


def _empirical_cov(ctx, rng, N, chunk=100000):
    m = ctx.m
    s1 = np.zeros(m)
    s2 = np.zeros((m, m))
    done = 0
    while done < N:
        B = min(chunk, N - done)
        xs = gf.sample_perturbation(ctx, rng, count=B).astype(np.float64)
        s1 += xs.sum(axis=0)
        s2 += xs.T @ xs
        done += B
    mean = s1 / N
    return s2 / N - np.outer(mean, mean)


@pytest.mark.acceptance
def test_dense_and_spectral_paths_agree():
    """Empirical covariances of the two paths agree entrywise within five
    standard errors at N = 10^6 (both ring shapes), and both match
    Sigma_p / (2 pi)."""
    rng = make_rng(b"cross-path")
    N = 1000000
    for kind, n, ident in ((gf.RingKind.CONV, 17, False),
                           (gf.RingKind.CYCLO, 16, True)):
        td = _toy_trapdoor(kind, n, ident, rng)
        s, r, rbar = _widths(td)
        dense_ctx = gf.build_context(td, s, r, rbar, mode="DENSE")
        spec_ctx = gf.build_context(td, s, r, rbar, mode="SPECTRAL")
        sigma = _dense_sigma(td.dense().astype(float), s, r) / (2 * math.pi)
        cov_d = _empirical_cov(dense_ctx, rng, N)
        cov_s = _empirical_cov(spec_ctx, rng, N)
        dvar = np.diag(sigma)
        se = np.sqrt((np.outer(dvar, dvar) + sigma ** 2) / N)
        assert np.all(np.abs(cov_d - sigma) <= 5 * se), kind
        assert np.all(np.abs(cov_s - sigma) <= 5 * se), kind
        assert np.all(np.abs(cov_d - cov_s) <= 5 * np.sqrt(2.0) * se), kind


def test_robin701_context_builds_for_accepted_keys():
    from conftest import keypair
    params, pk, sk = keypair("robin-701")
    # the signer context was built during keygen; rebuild once more
    td = RingTrapdoor(ctx=params.ring_ctx(), g=sk.g, f=sk.f)
    ctx = gf.build_context(td, params.s_width, params.r_width,
                           params.rbar_width, mode="SPECTRAL")
    assert ctx.m == 2 * params.n


def test_spectral_sample_shapes():
    rng = make_rng(b"shapes")
    td = _toy_trapdoor(gf.RingKind.CYCLO, 16, True, rng)
    s, r, rbar = _widths(td)
    ctx = gf.build_context(td, s, r, rbar, mode="SPECTRAL")
    one = gf.sample_perturbation(ctx, rng)
    assert one.shape == (td.m,)
    many = gf.sample_perturbation(ctx, rng, count=7)
    assert many.shape == (7, td.m)
    assert many.dtype == np.int64
