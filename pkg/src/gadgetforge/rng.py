"""Expandable randomness built on SHAKE256.

The deterministic stream for a 32-byte seed is defined as the concatenation
of 64 KiB blocks

    block_i = SHAKE256(seed || be64(i))[0 : 65536],        i = 0, 1, 2, ...

where be64 is the 8-byte big-endian encoding of the block index.  The same
XOF (SHAKE256) is used for hashing messages to ring elements and for seed
expansion, so every random quantity in the package is reproducible from a
seed.  Without a seed, 32 fresh bytes are drawn from os.urandom.
"""

import hashlib
import os
import struct

import numpy as np

_BLOCK = 1 << 16
_INV_2_53 = 2.0 ** -53


class XofRng:
    """Random stream with numpy-friendly bulk output.

    Not thread-safe: use one instance per thread (fork one with spawn()).
    """

    def __init__(self, seed=None):
        if seed is None:
            seed = os.urandom(32)
        self.seed = bytes(seed)
        self._block_index = 0
        self._buf = b""
        self._pos = 0

    def spawn(self, index):
        """Derive an independent stream, e.g. one per worker or trial batch."""
        material = hashlib.shake_256(
            self.seed + b"fork" + struct.pack(">Q", index)).digest(32)
        return XofRng(material)

    def _refill(self):
        self._buf = hashlib.shake_256(
            self.seed + struct.pack(">Q", self._block_index)).digest(_BLOCK)
        self._block_index += 1
        self._pos = 0

    def bytes(self, k):
        out = bytearray()
        while k > 0:
            if self._pos >= len(self._buf):
                self._refill()
            take = min(k, len(self._buf) - self._pos)
            out += self._buf[self._pos:self._pos + take]
            self._pos += take
            k -= take
        return bytes(out)

    def u64(self, count):
        """count uniform 64-bit words as a numpy array."""
        raw = self.bytes(8 * int(count))
        return np.frombuffer(raw, dtype=">u8").astype(np.uint64)

    def random(self, count=None):
        """Uniform doubles in [0, 1) with 53-bit resolution."""
        n = 1 if count is None else int(count)
        vals = (self.u64(n) >> np.uint64(11)).astype(np.float64) * _INV_2_53
        return float(vals[0]) if count is None else vals

    def normals(self, count):
        """Standard normal deviates via Box-Muller."""
        n = int(count)
        half = (n + 1) // 2
        # u1 in (0, 1] so that log(u1) is finite
        u1 = ((self.u64(half) >> np.uint64(11)).astype(np.float64) + 1.0) * _INV_2_53
        u2 = self.random(half)
        rad = np.sqrt(-2.0 * np.log(u1))
        ang = 2.0 * np.pi * u2
        out = np.empty(2 * half)
        out[0::2] = rad * np.cos(ang)
        out[1::2] = rad * np.sin(ang)
        return out[:n]

    def randbelow(self, bound):
        """Uniform integer in [0, bound) by rejection on 64-bit words."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            if self._pos + 8 > len(self._buf):
                self._refill()
            word = int.from_bytes(self._buf[self._pos:self._pos + 8], "big")
            self._pos += 8
            if word < limit:
                return word % bound
