"""
Key generation, signing and verification
=========================================

The NTRU-based scheme: a secret pair of sparse ternary polynomials (f, g),
a public polynomial h with h*f + g = p (mod Q), and signatures consisting
of a 40-byte salt plus one Gaussian-distributed polynomial.
"""

import numpy as np

import gadgetforge as gf

params = gf.get_params("robin-701")
print("parameter set:", params.name)
print("  ring degree n =", params.n, " modulus Q =", params.Q,
      " gadget (p, q) =", (params.p, params.q))
print("  acceptance bound beta = %.1f, twisted weight gamma = %.3f"
      % (params.beta_accept, params.gamma))

# everything is reproducible from a 32-byte seed
rng = gf.XofRng(bytes([5]) + b"robin-701".ljust(31, b"\x00"))

print("\ngenerating a key pair (quality search over Galois-aligned candidates)")
pk, sk = gf.robin_keygen(params, rng)
print("  trapdoor quality %.2f against bound %.2f after %d restart(s)"
      % (sk.quality, params.quality_bound, sk.restarts))

# the defining key identity holds exactly: h f + g = p (mod Q)
ctx = params.ring_ctx()
p_poly = np.zeros(params.n, dtype=np.int64)
p_poly[0] = params.p
from gadgetforge.ring import center_mod
identity = center_mod(gf.ring_mul(pk.h, sk.f, ctx) + sk.g - p_poly, params.Q)
print("  key identity residue (should be all zero):", int(np.abs(identity).max()))

msg = b"a message worth signing"
sig = gf.robin_sign(msg, sk, pk, params, rng)
print("\nsigned %r" % msg)
print("  salt: %s..." % sig.salt[:8].hex())
print("  z1 coefficient range: [%d, %d]" % (sig.z1.min(), sig.z1.max()))
print("  verification:", gf.robin_verify(msg, sig, pk, params))
print("  tampered message:", gf.robin_verify(msg + b"!", sig, pk, params))

# the Ring-LWE-based scheme works the same way, with a two-polynomial
# signature and a seed-compressed public key
eagle = gf.get_params("eagle-512")
kp = gf.eagle_keygen(eagle, gf.XofRng(bytes([0]) + b"eagle-512".ljust(31, b"\x00")))
sig2 = gf.eagle_sign(msg, kp, eagle, rng)
print("\neagle-512:", gf.eagle_verify(msg, sig2, kp.public(), eagle))
