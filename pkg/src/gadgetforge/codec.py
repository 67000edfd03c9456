"""Hashing to ring elements, byte-exact serialization, and size accounting.

SHAKE256 is the single XOF: message hashing squeezes SHAKE256(salt || msg),
seed expansion squeezes SHAKE256(seed), both through the same 16-bit
rejection chunking.  Bit packing is big-endian throughout (first coefficient
in the most significant bits; final partial byte zero-padded on the right).

Signature payloads use Golomb-Rice coding per coefficient: one sign bit,
the k low magnitude bits, then the magnitude's high part in unary
(`quotient` one-bits closed by a zero-bit).  Zero must carry a positive
sign; decoders reject the "-0" encoding, overlong unary runs, nonzero
padding, and truncated streams.

File formats (.rpk/.rsk/.rsig and .epk/.esk/.esig): a 4-byte magic,
1-byte format version, 1-byte parameter-set id, then the payload defined by
encode_public_key / secret-key packing / encode_signature.  Secret-key
payloads store only (f, g) as 2-bit trits (Eagle prepends its 32-byte
public seed); everything derived is rebuilt on load.
"""

import hashlib

import numpy as np

from . import params as params_mod
from .ring import center_mod

FILE_VERSION = 1

MAGICS = {
    ("robin", "pk"): b"RBPK",
    ("robin", "sk"): b"RBSK",
    ("robin", "sig"): b"RBSG",
    ("eagle", "pk"): b"EGPK",
    ("eagle", "sk"): b"EGSK",
    ("eagle", "sig"): b"EGSG",
}

FILE_SUFFIX = {
    ("robin", "pk"): ".rpk",
    ("robin", "sk"): ".rsk",
    ("robin", "sig"): ".rsig",
    ("eagle", "pk"): ".epk",
    ("eagle", "sk"): ".esk",
    ("eagle", "sig"): ".esig",
}


class MalformedEncoding(Exception):
    """Input bytes are not a valid encoding for the expected object."""


def shake(data, outlen):
    return hashlib.shake_256(data).digest(outlen)


# -- hashing to ring elements ----------------------------------------------

def xof_uniform_poly(data, n, Q):
    """n coefficients uniform over centered Z_Q from the XOF stream of data.

    16-bit big-endian chunks t are accepted when t < floor(2^16 / Q) * Q,
    then reduced mod Q and centered.
    """
    if not 2 <= Q <= 65536:
        raise ValueError("the 16-bit chunk procedure needs 2 <= Q <= 65536")
    thresh = (65536 // Q) * Q
    nbytes = 2 * (n + max(32, n // 4))
    out = np.empty(0, dtype=np.int64)
    while True:
        buf = shake(data, nbytes)
        chunks = np.frombuffer(buf, dtype=">u2").astype(np.int64)
        good = chunks[chunks < thresh]
        if good.size >= n:
            out = good[:n]
            break
        nbytes *= 2
    return center_mod(out % Q, Q)


def hash_to_point(msg, salt, n, Q):
    """Deterministic digest of (msg, salt) as a uniform centered Z_Q vector."""
    return xof_uniform_poly(bytes(salt) + bytes(msg), n, Q)


def expand_seed(seed, n, Q):
    """Deterministic uniform ring element from a short seed."""
    return xof_uniform_poly(bytes(seed), n, Q)


# -- big-endian fixed-width packing -----------------------------------------

def pack_uint_be(values, width):
    """Pack values (< 2^width) into a big-endian bitstream, zero-padded."""
    values = np.asarray(values, dtype=np.int64)
    nbits = width * len(values)
    acc = 0
    for v in values:
        acc = (acc << width) | int(v)
    pad = (-nbits) % 8
    acc <<= pad
    return int(acc).to_bytes((nbits + pad) // 8, "big")


def unpack_uint_be(data, count, width):
    """Inverse of pack_uint_be; rejects wrong length or nonzero padding."""
    nbits = width * count
    nbytes = (nbits + 7) // 8
    if len(data) != nbytes:
        raise MalformedEncoding("bad packed length")
    acc = int.from_bytes(data, "big")
    pad = 8 * nbytes - nbits
    if pad and acc & ((1 << pad) - 1):
        raise MalformedEncoding("nonzero padding bits")
    acc >>= pad
    out = np.empty(count, dtype=np.int64)
    mask = (1 << width) - 1
    for i in range(count - 1, -1, -1):
        out[i] = acc & mask
        acc >>= width
    return out


# -- public keys -------------------------------------------------------------

def encode_public_key(pk, params):
    """Fixed-width packing; byte counts match the published tables exactly."""
    width = params.pk_bits_per_coeff
    if params.scheme == "robin":
        return pack_uint_be(np.asarray(pk.h) % params.Q, width)
    return bytes(pk.seed_a) + pack_uint_be(np.asarray(pk.b_poly) % params.Q, width)


def decode_public_key(data, params):
    """Returns h (robin) or (seed_a, b_poly) (eagle), centered mod Q."""
    width = params.pk_bits_per_coeff
    body = data
    seed = None
    if params.scheme == "eagle":
        if len(data) < params.seed_bytes:
            raise MalformedEncoding("public key too short")
        seed, body = data[:params.seed_bytes], data[params.seed_bytes:]
    vals = unpack_uint_be(body, params.n, width)
    if np.any(vals >= params.Q):
        raise MalformedEncoding("coefficient out of range")
    poly = center_mod(vals, params.Q)
    if params.scheme == "robin":
        return poly
    return seed, poly


def public_key_bytes(params):
    head = params.seed_bytes if params.scheme == "eagle" else 0
    return head + (params.pk_bits_per_coeff * params.n + 7) // 8


# -- secret keys (ternary trits) ---------------------------------------------

_TRIT_OF = {0: 0, 1: 1, -1: 2}
_VAL_OF_TRIT = np.array([0, 1, -1, 0], dtype=np.int64)


def pack_ternary(vecs):
    """Pack ternary vectors as 2-bit trits (0, 1, -1 -> 0, 1, 2)."""
    cat = np.concatenate([np.asarray(v, dtype=np.int64) for v in vecs])
    if np.any((cat < -1) | (cat > 1)):
        raise ValueError("not a ternary vector")
    trits = np.where(cat < 0, 2, cat)
    return pack_uint_be(trits, 2)


def unpack_ternary(data, lengths):
    total = sum(lengths)
    trits = unpack_uint_be(data, total, 2)
    if np.any(trits == 3):
        raise MalformedEncoding("invalid trit")
    flat = _VAL_OF_TRIT[trits]
    out = []
    pos = 0
    for ln in lengths:
        out.append(flat[pos:pos + ln])
        pos += ln
    return out


# -- Golomb-Rice signature payloads ------------------------------------------

class _BitWriter:
    def __init__(self):
        self.buf = bytearray()
        self.acc = 0
        self.nbits = 0

    def write(self, value, width):
        self.acc = (self.acc << width) | (value & ((1 << width) - 1))
        self.nbits += width
        while self.nbits >= 8:
            self.nbits -= 8
            self.buf.append((self.acc >> self.nbits) & 0xFF)
        self.acc &= (1 << self.nbits) - 1

    def getvalue(self):
        if self.nbits:
            return bytes(self.buf) + bytes([(self.acc << (8 - self.nbits)) & 0xFF])
        return bytes(self.buf)


class _BitReader:
    def __init__(self, data):
        self.data = data
        self.pos = 0          # bit position

    def read(self, width):
        end = self.pos + width
        if end > 8 * len(self.data):
            raise MalformedEncoding("truncated stream")
        val = 0
        pos = self.pos
        while width > 0:
            byte = self.data[pos >> 3]
            avail = 8 - (pos & 7)
            take = min(width, avail)
            val = (val << take) | ((byte >> (avail - take)) & ((1 << take) - 1))
            pos += take
            width -= take
        self.pos = pos
        return val

    def check_padding(self):
        rem = 8 * len(self.data) - self.pos
        if rem >= 8:
            raise MalformedEncoding("trailing bytes after payload")
        if rem and self.read(rem) != 0:
            raise MalformedEncoding("nonzero padding bits")


def _rice_encode(writer, coeffs, k, bound):
    for c in coeffs:
        c = int(c)
        mag = abs(c)
        if mag > bound:
            raise ValueError("coefficient exceeds the encodable range")
        writer.write(1 if c < 0 else 0, 1)
        writer.write(mag & ((1 << k) - 1), k)
        q = mag >> k
        writer.write(((1 << q) - 1) << 1, q + 1)   # q ones then a zero


def _rice_decode(reader, n, k, bound):
    max_q = (bound >> k) + 1
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        neg = reader.read(1)
        low = reader.read(k)
        q = 0
        while reader.read(1):
            q += 1
            if q > max_q:
                raise MalformedEncoding("unary run exceeds the range bound")
        mag = (q << k) | low
        if mag > bound:
            raise MalformedEncoding("coefficient out of range")
        if neg and mag == 0:
            raise MalformedEncoding("non-canonical negative zero")
        out[i] = -mag if neg else mag
    return out


def encode_signature(sig, params):
    """salt || Golomb-Rice payload of the transmitted polynomial(s)."""
    if len(sig.salt) != params.salt_bytes:
        raise ValueError("bad salt length")
    writer = _BitWriter()
    for poly in sig.polys():
        _rice_encode(writer, poly, params.gr_k, params.range_bound)
    return bytes(sig.salt) + writer.getvalue()


def decode_signature(data, params):
    """Inverse of encode_signature; raises MalformedEncoding on bad input."""
    from . import eagle, robin   # local import to avoid a cycle

    if len(data) < params.salt_bytes + 1:
        raise MalformedEncoding("signature too short")
    salt = bytes(data[:params.salt_bytes])
    reader = _BitReader(data[params.salt_bytes:])
    polys = [_rice_decode(reader, params.n, params.gr_k, params.range_bound)
             for _ in range(params.sig_polys)]
    reader.check_padding()
    if params.scheme == "robin":
        return robin.RobinSignature(salt=salt, z1=polys[0])
    return eagle.EagleSignature(salt=salt, z1=polys[0], z2=polys[1])


def entropy_estimate(params):
    """Size account in bytes for one signature at the entropic rate."""
    return params.entropy_bytes()


# -- framed files -------------------------------------------------------------

def frame(kind, params, payload):
    magic = MAGICS[(params.scheme, kind)]
    return magic + bytes([FILE_VERSION, params.set_id]) + payload


def unframe(kind, data, expected_params=None):
    """Returns (params, payload); the parameter set comes from the header."""
    if len(data) < 6:
        raise MalformedEncoding("file too short")
    magic, version, set_id = data[:4], data[4], data[5]
    scheme = None
    for (sch, knd), mg in MAGICS.items():
        if mg == magic and knd == kind:
            scheme = sch
    if scheme is None:
        raise MalformedEncoding("bad magic for %s file" % kind)
    if version != FILE_VERSION:
        raise MalformedEncoding("unsupported format version %d" % version)
    if expected_params is not None:
        ps = expected_params
        if ps.set_id != set_id or ps.scheme != scheme:
            raise MalformedEncoding("file parameter set does not match")
    else:
        try:
            ps = params_mod.params_by_id(set_id)
        except KeyError:
            raise MalformedEncoding("unknown parameter-set id %d" % set_id) from None
        if ps.scheme != scheme:
            raise MalformedEncoding("parameter set does not match file magic")
    return ps, data[6:]
