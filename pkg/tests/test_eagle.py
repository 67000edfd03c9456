"""Ring-LWE-scheme behaviour: seed expansion, identities, signing."""

import math

import numpy as np
from scipy.stats import chi2

import gadgetforge as gf
from gadgetforge.eagle import _sign_attempts
from gadgetforge.ring import center_mod, matform

from conftest import keypair, make_rng


def test_expand_seed_deterministic_and_distinct():
    seen = set()
    for i in range(200):
        seed = i.to_bytes(4, "big") + bytes(28)
        a = gf.expand_seed(seed, 512, 16000)
        b = gf.expand_seed(seed, 512, 16000)
        assert np.array_equal(a, b)
        seen.add(a.tobytes())
    assert len(seen) == 200


def test_expand_seed_uniformity():
    rng = make_rng(b"expand-uniform")
    Q = 16000
    buckets = np.zeros(16, dtype=np.int64)
    total = 0
    for i in range(2000):
        a = gf.expand_seed(rng.bytes(32), 512, Q)
        buckets += np.bincount(((a + Q // 2) * 16) // Q, minlength=16)
        total += 512
    expected = total / 16
    stat = float(((buckets - expected) ** 2 / expected).sum())
    assert stat <= chi2.isf(1e-3, 15)


def test_key_identity_exact():
    params, pk, kp = keypair("eagle-512")
    ctx = params.ring_ctx()
    a = gf.expand_seed(kp.seed_a, params.n, params.Q)
    lhs = center_mod(gf.ring_mul(a, kp.f, ctx) + kp.g + kp.b_poly, params.Q)
    want = np.zeros(params.n, dtype=np.int64)
    want[0] = params.p
    assert np.array_equal(lhs, center_mod(want, params.Q))


def test_acceptance_threshold_value():
    params = gf.get_params("eagle-512")
    assert abs(params.quality_bound - 1.7 * math.sqrt(512)) < 1e-9
    assert abs(params.quality_bound - 38.47) < 5e-3


def test_identity_block_singular_value_relation():
    """s1([M(g); M(f); I])^2 = s1([M(g); M(f)])^2 + 1 (dense SVD, n=16)."""
    rng = make_rng(b"eagle-s1")
    ctx = gf.RingCtx(16, gf.RingKind.CYCLO, 16000)
    shape = gf.TernaryShape(16, 5, 4)
    for _ in range(5):
        f = gf.sample_ternary(shape, rng)
        g = gf.sample_ternary(shape, rng)
        two = np.vstack([matform(g, ctx), matform(f, ctx)]).astype(float)
        three = np.vstack([two, np.eye(16)])
        s1_two = np.linalg.svd(two, compute_uv=False)[0]
        s1_three = np.linalg.svd(three, compute_uv=False)[0]
        assert abs(s1_three ** 2 - (s1_two ** 2 + 1)) <= 1e-8 * s1_three ** 2


def test_trapdoor_map_relation():
    params, pk, kp = keypair("eagle-512")
    rng = make_rng(b"eagle-tdmap")
    td = kp.signer.td
    for _ in range(5):
        v = np.array([rng.randbelow(21) - 10 for _ in range(params.n)],
                     dtype=np.int64)
        assert np.all(center_mod(td.apply_A(td.apply_T(v)) - params.p * v,
                                 params.Q) == 0)


def test_sign_verify_roundtrip():
    params, pk, kp = keypair("eagle-512")
    rng = make_rng(b"eagle-roundtrip")
    for _ in range(20):
        msg = rng.bytes(40)
        sig = gf.eagle_sign(msg, kp, params, rng)
        assert gf.eagle_verify(msg, sig, pk, params)


def test_recovered_term_equals_z0_plus_e():
    params, pk, kp = keypair("eagle-512")
    rng = make_rng(b"eagle-z0e")
    msg = b"recovery check"
    sig, _, x, e = _sign_attempts(msg, kp, params, rng)
    z0 = x[:params.n]
    ctx = params.ring_ctx()
    a = gf.expand_seed(pk.seed_a, params.n, params.Q)
    u = gf.hash_to_point(msg, sig.salt, params.n, params.Q)
    zp = center_mod(u - gf.ring_mul(a, sig.z1, ctx)
                    - gf.ring_mul(pk.b_poly, sig.z2, ctx), params.Q)
    assert np.array_equal(zp, z0 + e)


def test_tampered_public_key_rejected():
    params, pk, kp = keypair("eagle-512")
    rng = make_rng(b"eagle-tamper-b")
    msg = b"pk tamper"
    sig = gf.eagle_sign(msg, kp, params, rng)
    bad = gf.EaglePublicKey(seed_a=pk.seed_a, b_poly=pk.b_poly.copy())
    bad.b_poly[3] = center_mod(bad.b_poly[3] + 1, params.Q)
    assert not gf.eagle_verify(msg, sig, bad, params)


def test_swapped_blocks_rejected():
    params, pk, kp = keypair("eagle-512")
    rng = make_rng(b"eagle-swap")
    msg = b"swap test"
    sig = gf.eagle_sign(msg, kp, params, rng)
    swapped = gf.EagleSignature(salt=sig.salt, z1=sig.z2, z2=sig.z1)
    assert not gf.eagle_verify(msg, swapped, pk, params)


def test_public_key_stores_seed_not_expansion():
    params, pk, kp = keypair("eagle-512")
    assert len(pk.seed_a) == 32
    from gadgetforge.codec import encode_public_key
    assert len(encode_public_key(pk, params)) == 928
