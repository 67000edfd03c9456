"""The Ring-LWE-based hash-and-sign scheme over Z[x]/(x^n + 1).

The public key is (seed_a, b) with b = p - (a f + g) mod Q and a expanded
from the 32-byte seed, so a f + g + b = p (mod Q) and T = [M(g); M(f); I_n]
is an approximate trapdoor for A = [I | M(a) | M(b)].  Signatures carry the
salt and two Gaussian polynomials (z1, z2); verification recovers
z0 + e = u - a z1 - b z2 mod Q and checks ||(z0 + e, gamma z1, gamma z2)||.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import codec
from .gadget import GadgetParams, TrapdoorMap, presamp
from .gauss import TernaryShape, sample_ternary
from .keysearch import RESTART_LIMIT, KeygenRestartLimit, scan
from .perturb import NotPositiveDefinite, RingTrapdoor, build_context
from .ring import CachedMul, center_mod, galois, ring_mul


def expand_seed(seed, n, Q):
    """Deterministic uniform ring element from the public 32-byte seed."""
    return codec.expand_seed(seed, n, Q)


@dataclass
class EagleSignature:
    salt: bytes
    z1: np.ndarray
    z2: np.ndarray

    def polys(self):
        return [self.z1, self.z2]


@dataclass
class EaglePublicKey:
    seed_a: bytes
    b_poly: np.ndarray


@dataclass
class SignerState:
    td: TrapdoorMap
    gadget: GadgetParams
    perturb: object
    a_mul: CachedMul
    b_mul: CachedMul


@dataclass
class EagleKeyPair:
    seed_a: bytes
    b_poly: np.ndarray
    f: np.ndarray
    g: np.ndarray
    signer: SignerState
    quality: float = 0.0
    restarts: int = 0

    def public(self):
        return EaglePublicKey(seed_a=self.seed_a, b_poly=self.b_poly)


def build_signer(f, g, seed_a, b_poly, params):
    ctx = params.ring_ctx()
    n = params.n
    a_poly = expand_seed(seed_a, n, params.Q)
    trap = RingTrapdoor(ctx=ctx, g=np.asarray(g, dtype=np.int64),
                        f=np.asarray(f, dtype=np.int64), identity_block=True)
    perturb = build_context(trap, params.s_width, params.r_width,
                            params.rbar_width, mode="SPECTRAL")
    a_mul = CachedMul(a_poly, ctx)
    b_mul = CachedMul(b_poly, ctx)

    def apply_A(x):
        return center_mod(x[:n] + a_mul.mul(x[n:2 * n]) + b_mul.mul(x[2 * n:]),
                          params.Q)

    td = TrapdoorMap(apply_A=apply_A, apply_T=trap.apply, m=3 * n, n=n)
    gad = GadgetParams(p=params.p, q=params.q, Qmod=params.Q, r=params.r_width)
    return SignerState(td=td, gadget=gad, perturb=perturb,
                       a_mul=a_mul, b_mul=b_mul)


def eagle_keygen(params, rng):
    """Same K x K Galois-quality search as the NTRU scheme; no polynomial
    inversion is needed."""
    ctx = params.ring_ctx()
    shape = TernaryShape(params.n, params.a, params.b)
    thresh_sq = params.quality_bound ** 2
    seed_a = rng.bytes(params.seed_bytes)
    a_poly = expand_seed(seed_a, params.n, params.Q)
    p_poly = np.zeros(params.n, dtype=np.int64)
    p_poly[0] = params.p
    for restart in range(RESTART_LIMIT):
        fs = [sample_ternary(shape, rng) for _ in range(params.K)]
        gs = [sample_ternary(shape, rng) for _ in range(params.K)]
        for i, j, k, qsq in scan(fs, gs, ctx, thresh_sq):
            f = fs[i]
            g = galois(gs[j], k, ctx)
            b_poly = center_mod(p_poly - (ring_mul(a_poly, f, ctx) + g), params.Q)
            try:
                signer = build_signer(f, g, seed_a, b_poly, params)
            except NotPositiveDefinite:
                continue
            return EagleKeyPair(seed_a=seed_a, b_poly=b_poly, f=f, g=g,
                                signer=signer, quality=float(np.sqrt(qsq)),
                                restarts=restart)
    raise KeygenRestartLimit(
        "no qualifying key pair after %d restarts" % RESTART_LIMIT)


def _sign_attempts(msg, kp, params, rng):
    st = kp.signer
    n = params.n
    beta_sq = params.beta_accept ** 2
    gamma_sq = params.gamma ** 2
    for attempt in itertools.count(1):
        salt = rng.bytes(params.salt_bytes)
        u = codec.hash_to_point(msg, salt, n, params.Q)
        x = presamp(st.td, st.gadget, u, params.s_width, st.perturb, rng)
        z0, z1, z2 = x[:n], x[n:2 * n], x[2 * n:]
        e = center_mod(u - (z0 + st.a_mul.mul(z1) + st.b_mul.mul(z2)), params.Q)
        w = z0 + e
        norm_sq = float(w @ w) + gamma_sq * (float(z1 @ z1) + float(z2 @ z2))
        if norm_sq <= beta_sq:
            return EagleSignature(salt=salt, z1=z1, z2=z2), attempt, x, e


def eagle_sign(msg, kp, params, rng):
    sig, _, _, _ = _sign_attempts(msg, kp, params, rng)
    return sig


def eagle_verify(msg, sig, pk, params):
    try:
        z1 = np.asarray(sig.z1, dtype=np.int64)
        z2 = np.asarray(sig.z2, dtype=np.int64)
        salt = bytes(sig.salt)
        seed_a = bytes(pk.seed_a)
    except (TypeError, ValueError, OverflowError):
        return False
    if len(salt) != params.salt_bytes or len(seed_a) != params.seed_bytes:
        return False
    if z1.shape != (params.n,) or z2.shape != (params.n,):
        return False
    if max(np.max(np.abs(z1)), np.max(np.abs(z2))) > params.range_bound:
        return False
    ctx = params.ring_ctx()
    a_poly = expand_seed(seed_a, params.n, params.Q)
    u = codec.hash_to_point(msg, salt, params.n, params.Q)
    zp = center_mod(u - CachedMul(a_poly, ctx).mul(z1)
                    - CachedMul(pk.b_poly, ctx).mul(z2), params.Q)
    norm_sq = float(zp @ zp) + params.gamma ** 2 * (float(z1 @ z1) + float(z2 @ z2))
    return norm_sq <= params.beta_accept ** 2


# -- files ---------------------------------------------------------------

def save_public_key(path, pk, params):
    payload = codec.encode_public_key(pk, params)
    with open(path, "wb") as fh:
        fh.write(codec.frame("pk", params, payload))


def load_public_key(path, expected_params=None):
    with open(path, "rb") as fh:
        params, payload = codec.unframe("pk", fh.read(), expected_params)
    if params.scheme != "eagle":
        raise codec.MalformedEncoding("not an eagle public key")
    seed_a, b_poly = codec.decode_public_key(payload, params)
    return params, EaglePublicKey(seed_a=seed_a, b_poly=b_poly)


def save_secret_key(path, kp, params):
    payload = bytes(kp.seed_a) + codec.pack_ternary([kp.f, kp.g])
    with open(path, "wb") as fh:
        fh.write(codec.frame("sk", params, payload))


def load_secret_key(path, expected_params=None):
    """Rebuild b and the signer state from (seed_a, f, g)."""
    with open(path, "rb") as fh:
        params, payload = codec.unframe("sk", fh.read(), expected_params)
    if params.scheme != "eagle":
        raise codec.MalformedEncoding("not an eagle secret key")
    if len(payload) < params.seed_bytes:
        raise codec.MalformedEncoding("secret key too short")
    seed_a = payload[:params.seed_bytes]
    f, g = codec.unpack_ternary(payload[params.seed_bytes:], [params.n, params.n])
    ctx = params.ring_ctx()
    a_poly = expand_seed(seed_a, params.n, params.Q)
    p_poly = np.zeros(params.n, dtype=np.int64)
    p_poly[0] = params.p
    b_poly = center_mod(p_poly - (ring_mul(a_poly, f, ctx) + g), params.Q)
    kp = EagleKeyPair(seed_a=seed_a, b_poly=b_poly, f=f, g=g,
                      signer=build_signer(f, g, seed_a, b_poly, params))
    return params, kp


def save_signature(path, sig, params):
    with open(path, "wb") as fh:
        fh.write(codec.frame("sig", params, codec.encode_signature(sig, params)))


def load_signature(path, expected_params=None):
    with open(path, "rb") as fh:
        params, payload = codec.unframe("sig", fh.read(), expected_params)
    if params.scheme != "eagle":
        raise codec.MalformedEncoding("not an eagle signature")
    return params, codec.decode_signature(payload, params)
