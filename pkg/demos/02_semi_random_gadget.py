"""
The semi-random gadget sampler
==============================

The gadget is the scalar matrix p*I with companion q*I, p*q = Q.  Inverting
a target u splits into a deterministic part and a random part:

  1. decode:  u = p*c + e with e the centered residue mod p (no randomness)
  2. sample:  x ~ D_{qZ + c, r} coordinate-wise

so p*x = u - e (mod Q) always holds, and for uniform targets the error is
exactly uniform over centered Z_p.
"""

import numpy as np

import gadgetforge as gf
from gadgetforge.gauss import SQRT_2PI

rng = gf.XofRng(b"gadget-demo".ljust(32, b"\x00"))

# decode a few targets by hand
print("decode examples (p = 2048):")
for u in (0, 3000, 1024, -5000):
    c, e = gf.decode_mod_p(np.array([u]), 2048)
    print("  u=%6d  ->  c=%3d, e=%6d   (p*c + e = %d)" % (u, c[0], e[0],
                                                          2048 * c[0] + e[0]))

# full sampler at the robin-701 gadget
params = gf.get_params("robin-701")
g = gf.GadgetParams(p=params.p, q=params.q, Qmod=params.Q, r=params.r_width)
u = gf.hash_to_point(b"demo target", bytes(40), params.n, params.Q)
x = gf.gadget_sample(u, g, rng)
_, e = gf.decode_mod_p(u, g.p)
residue = (g.p * x + e - u) % g.Qmod
print("\ngadget identity p*x + e = u (mod Q):",
      "exact" if not residue.any() else "VIOLATED")
print("preimage std %.1f (width r gives %d)" % (x.std(), round(g.r / SQRT_2PI)))

# the error of a uniform target is uniform over centered Z_p
N = 200000
us = np.asarray(rng.u64(N).astype(np.int64) % g.Qmod) - g.Qmod // 2
_, es = gf.decode_mod_p(us, g.p)
hist = np.bincount(es + g.p // 2, minlength=g.p)
print("error histogram: min %d, max %d around the uniform mean %.1f"
      % (hist.min(), hist.max(), N / g.p))
