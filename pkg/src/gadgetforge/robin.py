"""The NTRU-based hash-and-sign scheme over Z[x]/(x^n - 1).

Keys: ternary (f, g) with h f + g = p (mod Q), public key h = (p - g)/f.
A signature is a 40-byte salt plus the single Gaussian polynomial z1; the
verifier recovers z0 + e = u - h z1 mod Q and checks the twisted norm
||(z0 + e, gamma z1)|| <= beta.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import codec
from .gadget import GadgetParams, TrapdoorMap, presamp
from .gauss import TernaryShape, sample_ternary
from .keysearch import RESTART_LIMIT, KeygenRestartLimit, scan
from .perturb import NotPositiveDefinite, RingTrapdoor, build_context
from .ring import CachedMul, NotInvertible, center_mod, galois, invert_mod_2k, ring_mul


@dataclass
class RobinSignature:
    salt: bytes
    z1: np.ndarray

    def polys(self):
        return [self.z1]


@dataclass
class RobinPublicKey:
    h: np.ndarray


@dataclass
class SignerState:
    """Read-only after key generation; concurrent signing needs only
    per-thread rngs."""

    td: TrapdoorMap
    gadget: GadgetParams
    perturb: object
    h_mul: CachedMul


@dataclass
class RobinSecretKey:
    f: np.ndarray
    g: np.ndarray
    h: np.ndarray
    signer: SignerState
    quality: float = 0.0
    restarts: int = 0


def build_signer(f, g, h, params):
    """Precompute the trapdoor maps and perturbation factorization."""
    ctx = params.ring_ctx()
    n = params.n
    trap = RingTrapdoor(ctx=ctx, g=np.asarray(g, dtype=np.int64),
                        f=np.asarray(f, dtype=np.int64))
    perturb = build_context(trap, params.s_width, params.r_width,
                            params.rbar_width, mode="SPECTRAL")
    h_mul = CachedMul(h, ctx)

    def apply_A(x):
        return center_mod(x[:n] + h_mul.mul(x[n:]), params.Q)

    td = TrapdoorMap(apply_A=apply_A, apply_T=trap.apply, m=2 * n, n=n)
    gad = GadgetParams(p=params.p, q=params.q, Qmod=params.Q, r=params.r_width)
    return SignerState(td=td, gadget=gad, perturb=perturb, h_mul=h_mul)


def robin_keygen(params, rng):
    """Sample K candidates per side, take the first Galois-aligned pair
    within the quality bound, and derive h = (p - g)/f mod Q.

    Candidates whose f is not invertible mod 2 are skipped; if no pair in a
    batch qualifies, the whole batch is redrawn (at most RESTART_LIMIT
    times).
    """
    ctx = params.ring_ctx()
    shape = TernaryShape(params.n, params.a, params.b)
    thresh_sq = params.quality_bound ** 2
    p_poly = np.zeros(params.n, dtype=np.int64)
    p_poly[0] = params.p
    for restart in range(RESTART_LIMIT):
        fs = [sample_ternary(shape, rng) for _ in range(params.K)]
        gs = [sample_ternary(shape, rng) for _ in range(params.K)]
        inverses = {}
        for i, j, k, qsq in scan(fs, gs, ctx, thresh_sq):
            if i not in inverses:
                try:
                    inverses[i] = invert_mod_2k(fs[i], ctx)
                except NotInvertible:
                    inverses[i] = None
            if inverses[i] is None:
                continue
            f = fs[i]
            g = galois(gs[j], k, ctx)
            h = ring_mul(p_poly - g, inverses[i], ctx)
            try:
                signer = build_signer(f, g, h, params)
            except NotPositiveDefinite:
                continue
            sk = RobinSecretKey(f=f, g=g, h=h, signer=signer,
                                quality=float(np.sqrt(qsq)), restarts=restart)
            return RobinPublicKey(h=h), sk
    raise KeygenRestartLimit(
        "no qualifying key pair after %d restarts" % RESTART_LIMIT)


def _sign_attempts(msg, sk, params, rng):
    """Sign; also expose the attempt count, full preimage and error for the
    statistical harness."""
    st = sk.signer
    n = params.n
    beta_sq = params.beta_accept ** 2
    gamma_sq = params.gamma ** 2
    for attempt in itertools.count(1):
        salt = rng.bytes(params.salt_bytes)
        u = codec.hash_to_point(msg, salt, n, params.Q)
        x = presamp(st.td, st.gadget, u, params.s_width, st.perturb, rng)
        z0, z1 = x[:n], x[n:]
        e = center_mod(u - (z0 + st.h_mul.mul(z1)), params.Q)
        w = z0 + e
        norm_sq = float(w @ w) + gamma_sq * float(z1 @ z1)
        if norm_sq <= beta_sq:
            return RobinSignature(salt=salt, z1=z1), attempt, x, e


def robin_sign(msg, sk, pk, params, rng):
    """Fresh salt per attempt; restarts redraw all randomness."""
    sig, _, _, _ = _sign_attempts(msg, sk, params, rng)
    return sig


def robin_verify(msg, sig, pk, params):
    """All inputs untrusted; any structural defect rejects."""
    try:
        z1 = np.asarray(sig.z1, dtype=np.int64)
        salt = bytes(sig.salt)
    except (TypeError, ValueError, OverflowError):
        return False
    if len(salt) != params.salt_bytes or z1.shape != (params.n,):
        return False
    if np.max(np.abs(z1)) > params.range_bound:
        return False
    u = codec.hash_to_point(msg, salt, params.n, params.Q)
    zp = center_mod(u - CachedMul(pk.h, params.ring_ctx()).mul(z1), params.Q)
    norm_sq = float(zp @ zp) + params.gamma ** 2 * float(z1 @ z1)
    return norm_sq <= params.beta_accept ** 2


# -- files ---------------------------------------------------------------

def save_public_key(path, pk, params):
    payload = codec.encode_public_key(pk, params)
    with open(path, "wb") as fh:
        fh.write(codec.frame("pk", params, payload))


def load_public_key(path, expected_params=None):
    with open(path, "rb") as fh:
        params, payload = codec.unframe("pk", fh.read(), expected_params)
    if params.scheme != "robin":
        raise codec.MalformedEncoding("not a robin public key")
    return params, RobinPublicKey(h=codec.decode_public_key(payload, params))


def save_secret_key(path, sk, params):
    payload = codec.pack_ternary([sk.f, sk.g])
    with open(path, "wb") as fh:
        fh.write(codec.frame("sk", params, payload))


def load_secret_key(path, expected_params=None):
    """Rebuild h and the signer state from the stored (f, g)."""
    with open(path, "rb") as fh:
        params, payload = codec.unframe("sk", fh.read(), expected_params)
    if params.scheme != "robin":
        raise codec.MalformedEncoding("not a robin secret key")
    f, g = codec.unpack_ternary(payload, [params.n, params.n])
    ctx = params.ring_ctx()
    p_poly = np.zeros(params.n, dtype=np.int64)
    p_poly[0] = params.p
    try:
        f_inv = invert_mod_2k(f, ctx)
    except NotInvertible:
        raise codec.MalformedEncoding("stored f is not invertible") from None
    h = ring_mul(p_poly - g, f_inv, ctx)
    sk = RobinSecretKey(f=f, g=g, h=h, signer=build_signer(f, g, h, params))
    return params, sk


def save_signature(path, sig, params):
    with open(path, "wb") as fh:
        fh.write(codec.frame("sig", params, codec.encode_signature(sig, params)))


def load_signature(path, expected_params=None):
    with open(path, "rb") as fh:
        params, payload = codec.unframe("sig", fh.read(), expected_params)
    if params.scheme != "robin":
        raise codec.MalformedEncoding("not a robin signature")
    return params, codec.decode_signature(payload, params)
