"""
Key and signature sizes
=======================

Public keys pack ceil(log2 Q) bits per coefficient (plus a 32-byte seed for
the Ring-LWE scheme).  Signatures carry the salt and Golomb-Rice-coded
Gaussian coefficients; the average encoded size stays within a few percent
of the entropy-based size account.
"""

import numpy as np

import gadgetforge as gf
from gadgetforge import codec

rng = gf.XofRng(b"sizes-demo".ljust(32, b"\x00"))

rows = []
for name, seed_byte in (("robin-701", 5), ("eagle-512", 0)):
    params = gf.get_params(name)
    krng = gf.XofRng(bytes([seed_byte]) + name.encode().ljust(31, b"\x00"))
    if params.scheme == "robin":
        pk, sk = gf.robin_keygen(params, krng)
        sign = lambda m: gf.robin_sign(m, sk, pk, params, krng)
    else:
        kp = gf.eagle_keygen(params, krng)
        pk = kp.public()
        sign = lambda m: gf.eagle_sign(m, kp, params, krng)
    pk_bytes = len(codec.encode_public_key(pk, params))
    sizes = [len(codec.encode_signature(sign(rng.bytes(32)), params))
             for _ in range(100)]
    rows.append((name, pk_bytes, np.mean(sizes), gf.entropy_estimate(params)))

print("%-12s %10s %14s %16s %8s" % ("set", "pk bytes", "avg sig bytes",
                                    "entropy bytes", "ratio"))
for name, pkb, avg, ent in rows:
    print("%-12s %10d %14.1f %16d %8.3f" % (name, pkb, avg, ent, avg / ent))

print("\nGolomb-Rice parameter k per set:",
      {n: gf.get_params(n).gr_k for n, _, _, _ in rows})
