"""Shared fixtures: deterministic rngs and session-cached keys.

Key generation is the expensive step (the quality target sits near the
median of what the Galois search achieves, so several candidate batches are
typically consumed); every test shares one key per parameter set, generated
from a pinned seed known to succeed quickly.
"""

import pytest

import gadgetforge as gf

# seed prefix bytes found by scanning; keygen from these seeds stays well
# inside the restart guard for every set
KEYGEN_SEED_BYTE = {
    "robin-701": 5,
    "robin-1061": 8,
    "robin-1279": 0,
    "eagle-512": 0,
    "eagle-1024": 3,
}


def keygen_seed(name):
    return bytes([KEYGEN_SEED_BYTE[name]]) + name.encode().ljust(31, b"\x00")


def make_rng(tag):
    if isinstance(tag, str):
        tag = tag.encode()
    return gf.XofRng(bytes(tag).ljust(32, b"\x00")[:32])


_KEY_CACHE = {}


def keypair(name):
    """(params, public, secret) for a parameter set, cached per session."""
    if name not in _KEY_CACHE:
        params = gf.get_params(name)
        rng = gf.XofRng(keygen_seed(name))
        if params.scheme == "robin":
            pk, sk = gf.robin_keygen(params, rng)
        else:
            sk = gf.eagle_keygen(params, rng)
            pk = sk.public()
        _KEY_CACHE[name] = (params, pk, sk)
    return _KEY_CACHE[name]


@pytest.fixture
def rng():
    return make_rng(b"fixture-default")


def sign_any(msg, params, pk, sk, rng):
    if params.scheme == "robin":
        return gf.robin_sign(msg, sk, pk, params, rng)
    return gf.eagle_sign(msg, sk, params, rng)


def verify_any(msg, sig, params, pk):
    if params.scheme == "robin":
        return gf.robin_verify(msg, sig, pk, params)
    return gf.eagle_verify(msg, sig, pk, params)


def assert_close(a, b, rtol):
    assert abs(a - b) <= rtol * abs(b), "%.6g vs %.6g (rtol %.3g)" % (a, b, rtol)
