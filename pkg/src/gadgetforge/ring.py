"""Arithmetic in Z[x]/(x^n - 1) (n prime) and Z[x]/(x^n + 1) (n a power of 2).

Polynomials are plain numpy int64 arrays of length n holding the coefficient
vector; the ambient ring is described by a RingCtx passed alongside.  All
modular results use centered representatives: the residue of v modulo Q lies
in {-floor(Q/2), ..., Q - floor(Q/2) - 1}.

Complex-embedding order (fixed, relied upon by the spectral machinery):

    CONV  (x^n - 1):  index j  ->  omega_j = exp(2*pi*i*j / n)
    CYCLO (x^n + 1):  index j  ->  omega_j = exp(i*pi*(2j+1) / n)

The CONV transform goes through numpy's FFT, which handles prime lengths
with Bluestein's algorithm; CYCLO uses the radix-2 FFT on twisted inputs.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class RingKind(Enum):
    CONV = "conv"    # x^n - 1, n prime
    CYCLO = "cyclo"  # x^n + 1, n a power of 2


# A ring element is its coefficient vector (int64, length ctx.n); a spectrum
# is the vector of squared embedding magnitudes (float64, length ctx.n).
Poly = np.ndarray
Spectrum = np.ndarray


class NotInvertible(Exception):
    """The polynomial has no inverse in the quotient ring (not a unit mod 2)."""


_TWIST_CACHE = {}


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingCtx:
    """Ring descriptor: degree n, reduction polynomial kind, and modulus Q."""

    n: int
    kind: RingKind
    Q: int

    def __post_init__(self):
        if self.Q < 2:
            raise ValueError("Q must be >= 2")
        if self.kind is RingKind.CONV:
            if not _is_prime(self.n):
                raise ValueError("CONV ring requires prime n, got %d" % self.n)
        elif self.kind is RingKind.CYCLO:
            if self.n < 1 or self.n & (self.n - 1):
                raise ValueError("CYCLO ring requires n a power of 2, got %d" % self.n)
        else:
            raise ValueError("unknown ring kind")

    # -- complex embedding ------------------------------------------------

    def eval_points(self):
        """The n evaluation points in the documented order."""
        j = np.arange(self.n)
        if self.kind is RingKind.CONV:
            return np.exp(2j * np.pi * j / self.n)
        return np.exp(1j * np.pi * (2 * j + 1) / self.n)

    def _twist(self, conj=False):
        pair = _TWIST_CACHE.get(self.n)
        if pair is None:
            tw = np.exp(1j * np.pi * np.arange(self.n) / self.n)
            cj = tw.conj()
            tw.setflags(write=False)
            cj.setflags(write=False)
            pair = (tw, cj)
            _TWIST_CACHE[self.n] = pair
        return pair[1] if conj else pair[0]

    def embed(self, a):
        """Values a(omega_j) over the documented evaluation points.

        Accepts batched input of shape (..., n); transforms the last axis.
        """
        a = np.asarray(a)
        if self.kind is RingKind.CONV:
            return self.n * np.fft.ifft(a, axis=-1)
        return self.n * np.fft.ifft(a * self._twist(), axis=-1)

    def unembed_real(self, vals):
        """Inverse of embed for conjugate-symmetric spectra; returns floats."""
        if self.kind is RingKind.CONV:
            return np.fft.fft(vals, axis=-1).real / self.n
        back = np.fft.fft(vals, axis=-1) * self._twist(conj=True)
        return back.real / self.n

    def conj_pairs(self):
        """(self-conjugate indices, (lo, hi) paired indices) of eval points."""
        n = self.n
        if self.kind is RingKind.CONV:
            lo = np.arange(1, (n + 1) // 2)
            pairs = (lo, n - lo)
            selfc = np.array([0]) if n % 2 == 1 else np.array([0, n // 2])
        else:
            lo = np.arange(n // 2)
            pairs = (lo, n - 1 - lo)
            selfc = np.array([], dtype=int)
        return selfc, pairs


def center_mod(v, Q):
    """Residue(s) of v modulo Q in {-floor(Q/2), ..., Q - floor(Q/2) - 1}."""
    half = Q // 2
    return (np.asarray(v, dtype=np.int64) + half) % Q - half


def _check_len(a, ctx):
    a = np.asarray(a, dtype=np.int64)
    if a.shape != (ctx.n,):
        raise ValueError("expected coefficient vector of length %d" % ctx.n)
    return a


def _reduce_product(full, ctx):
    """Fold a raw convolution of length 2n-1 by x^n = +-1."""
    n = ctx.n
    out = full[:n].copy()
    if ctx.kind is RingKind.CONV:
        out[:n - 1] += full[n:]
    else:
        out[:n - 1] -= full[n:]
    return out


def ring_mul(a, b, ctx):
    """Product a*b reduced by x^n -+ 1 and centered mod Q (exact integers)."""
    a = _check_len(a, ctx)
    b = _check_len(b, ctx)
    full = np.convolve(a, b)
    return center_mod(_reduce_product(full, ctx), ctx.Q)


def adjoint(a, ctx):
    """The adjoint a(x^{-1}); its matrix form is the transpose of M(a)."""
    a = _check_len(a, ctx)
    out = np.empty_like(a)
    out[0] = a[0]
    out[1:] = a[1:][::-1]
    if ctx.kind is RingKind.CYCLO:
        out[1:] = -out[1:]
    return out


def galois(a, k, ctx):
    """The map a(x) -> a(x^k) for k a unit (CONV: gcd(k,n)=1; CYCLO: k odd)."""
    a = _check_len(a, ctx)
    n = ctx.n
    if ctx.kind is RingKind.CONV:
        k = k % n
        if k == 0 or math.gcd(k, n) != 1:
            raise ValueError("k must be a unit modulo n")
        idx = (np.arange(n) * k) % n
        out = np.zeros(n, dtype=np.int64)
        out[idx] = a
        return out
    k = k % (2 * n)
    if k % 2 == 0:
        raise ValueError("k must be odd for the cyclotomic ring")
    e = (np.arange(n) * k) % (2 * n)
    sign = np.where(e < n, 1, -1).astype(np.int64)
    idx = np.where(e < n, e, e - n)
    out = np.zeros(n, dtype=np.int64)
    out[idx] = sign * a
    return out


def galois_eval_perm(k, ctx):
    """Permutation pi_k with spectrum(galois(a,k))[j] = spectrum(a)[pi_k(j)]."""
    n = ctx.n
    j = np.arange(n)
    if ctx.kind is RingKind.CONV:
        if k % n == 0 or math.gcd(k, n) != 1:
            raise ValueError("k must be a unit modulo n")
        return (j * k) % n
    if k % 2 == 0:
        raise ValueError("k must be odd for the cyclotomic ring")
    return ((k * (2 * j + 1)) % (2 * n) - 1) // 2


def spectrum(a, ctx):
    """Squared magnitudes |a(omega_j)|^2 in the documented point order."""
    a = _check_len(a, ctx)
    vals = ctx.embed(a.astype(np.float64))
    return np.abs(vals) ** 2


def quality(f, g, k, ctx):
    """sqrt(s1(M(f*adj(f) + sigma_k(g)*adj(sigma_k(g))))) via spectra.

    Equals the largest singular value of the stacked matrix
    [M(f); M(sigma_k(g))].
    """
    F = spectrum(f, ctx)
    G = spectrum(g, ctx)
    perm = galois_eval_perm(k, ctx)
    return math.sqrt(float(np.max(F + G[perm])))


# -- inversion modulo a power of two --------------------------------------

def _gf2_bits(a, n):
    """Coefficients mod 2 packed into an int (bit i = coefficient of x^i)."""
    bits = 0
    for i in range(n - 1, -1, -1):
        bits = (bits << 1) | (int(a[i]) & 1)
    return bits


def _gf2_mod(a, m):
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _gf2_inverse(a_bits, n):
    """Inverse of a modulo x^n + 1 over GF(2), or NotInvertible."""
    m = (1 << n) | 1
    if a_bits == 0:
        raise NotInvertible("zero divisor modulo 2")
    # extended Euclid maintaining r_i = s_i * a  (mod m)
    r0, s0 = m, 0
    r1, s1 = a_bits, 1
    while r1:
        shift = r0.bit_length() - r1.bit_length()
        if shift < 0:
            r0, r1 = r1, r0
            s0, s1 = s1, s0
            continue
        r0 ^= r1 << shift
        s0 ^= s1 << shift
        if r0.bit_length() < r1.bit_length():
            r0, r1 = r1, r0
            s0, s1 = s1, s0
    if r0 != 1:
        raise NotInvertible("gcd with x^n + 1 over GF(2) is not 1")
    return _gf2_mod(s0, m)


def invert_mod_2k(f, ctx):
    """Inverse of f modulo Q = 2^e, by GF(2) inversion and Hensel lifting.

    Raises NotInvertible when f is not a unit modulo 2 (key generation
    treats that as candidate rejection).
    """
    f = _check_len(f, ctx)
    Q = ctx.Q
    e = Q.bit_length() - 1
    if Q != 1 << e:
        raise ValueError("invert_mod_2k requires Q to be a power of two")
    inv_bits = _gf2_inverse(_gf2_bits(f, ctx.n), ctx.n)
    inv = np.array([(inv_bits >> i) & 1 for i in range(ctx.n)], dtype=np.int64)
    # Newton iteration x -> x(2 - f x) doubles the number of correct bits
    one = np.zeros(ctx.n, dtype=np.int64)
    one[0] = 1
    two = 2 * one
    for _ in range(max(1, math.ceil(math.log2(e)) + 1)):
        t = center_mod(two - ring_mul(f, inv, ctx), Q)
        inv = ring_mul(inv, t, ctx)
        if np.array_equal(ring_mul(f, inv, ctx), one):
            break
    if not np.array_equal(ring_mul(f, inv, ctx), one):
        raise NotInvertible("Hensel lifting failed to converge")
    return inv


def matform(a, ctx):
    """Dense matrix form M(a) with columns v(a * x^i).

    Circulant for CONV, anticirculant for CYCLO.  Used by the dense
    perturbation path and as the oracle for embedding-based code paths.
    """
    a = _check_len(a, ctx)
    n = ctx.n
    i = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    d = i - j
    M = a[d % n]
    if ctx.kind is RingKind.CYCLO:
        M = np.where(d < 0, -M, M)
    return M.astype(np.int64)


class CachedMul:
    """Multiplication by a fixed polynomial through the complex embedding.

    The embedding of the fixed operand is computed once; each product then
    costs two FFTs.  Results are exact integers as long as the rounding
    margin stays far below 1/2, which holds for every operand magnitude in
    this package; a slow exact fallback guards the pathological case.
    """

    def __init__(self, a, ctx):
        self.ctx = ctx
        self.coeffs = _check_len(a, ctx)
        self.spec = ctx.embed(self.coeffs.astype(np.float64))

    def mul(self, b):
        """Exact integer product a*b reduced by x^n -+ 1 (no mod Q)."""
        ctx = self.ctx
        vals = self.spec * ctx.embed(np.asarray(b, dtype=np.float64))
        raw = ctx.unembed_real(vals)
        out = np.rint(raw)
        if np.max(np.abs(raw - out)) > 0.25:
            full = np.convolve(self.coeffs, np.asarray(b, dtype=np.int64))
            return _reduce_product(full, ctx)
        return out.astype(np.int64)
