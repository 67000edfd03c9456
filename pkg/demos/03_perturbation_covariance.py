"""
Perturbation sampling: dense oracle vs. spectral fast path
==========================================================

Preimage simulatability needs perturbations with covariance
Sigma_p = s^2 I - r^2 T T^t.  The dense path Cholesky-factors the full
m x m matrix; the spectral path exploits that T T^t is block-circulant
for ring trapdoors, splitting into n small Hermitian blocks (2x2 here).
Both produce the same distribution; the spectral path is the one the
signer uses.
"""

import math

import numpy as np

import gadgetforge as gf
from gadgetforge.gauss import SQRT_2PI
from gadgetforge.perturb import RingTrapdoor, _dense_sigma

rng = gf.XofRng(b"perturb-demo".ljust(32, b"\x00"))

n = 17
ctx = gf.RingCtx(n, gf.RingKind.CONV, 1 << 14)
shape = gf.TernaryShape(n, 5, 4)
td = RingTrapdoor(ctx=ctx, g=gf.sample_ternary(shape, rng),
                  f=gf.sample_ternary(shape, rng))

Td = td.dense().astype(float)
s1 = np.linalg.svd(Td, compute_uv=False)[0]
r = 8.0 * SQRT_2PI
rbar = r / 4
s = 1.15 * math.sqrt((r ** 2 + rbar ** 2) * (s1 ** 2 + 1))
print("toy trapdoor: m = %d, s1(T) = %.2f, widths s = %.1f, r = %.1f" %
      (td.m, s1, s, r))

dense = gf.build_context(td, s, r, rbar, mode="DENSE")
spectral = gf.build_context(td, s, r, rbar, mode="SPECTRAL")

target = _dense_sigma(Td, s, r) / (2 * math.pi)
N = 200000
for label, ctxp in (("dense", dense), ("spectral", spectral)):
    xs = gf.sample_perturbation(ctxp, rng, count=N).astype(float)
    cov = np.cov(xs.T)
    err = np.abs(cov - target).max() / target.max()
    print("  %-8s worst covariance deviation: %.3f%% of the largest entry"
          % (label, 100 * err))

# an s below the positivity threshold is rejected at build time
try:
    gf.build_context(td, 0.5 * s1 * r, r, rbar, mode="SPECTRAL")
except gf.NotPositiveDefinite as exc:
    print("undersized s rejected:", type(exc).__name__)
