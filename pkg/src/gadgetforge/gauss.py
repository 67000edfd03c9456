"""Integer discrete Gaussians and fixed-weight ternary secrets.

Width convention: a sampler of width w draws from the density proportional
to rho(x) = exp(-pi * x^2 / w^2), whose standard deviation is w / sqrt(2*pi).
Tables are built in double precision over the full truncated support
(center +- tailcut standard deviations), so the output distribution is the
exact tail-truncated discrete Gaussian up to floating-point quantization.
"""

import math
from dataclasses import dataclass

import numpy as np

SQRT_2PI = math.sqrt(2.0 * math.pi)

# chunk row count so the per-row probability tables stay within ~32 MB
_CHUNK_CELLS = 1 << 22


@dataclass(frozen=True)
class GaussParams:
    """Width/center/tailcut triple for the integer Gaussian sampler."""

    sigma_width: float
    center: float = 0.0
    tailcut: float = 10.0

    def __post_init__(self):
        if not self.sigma_width > 0:
            raise ValueError("sigma_width must be positive")
        if self.tailcut < 6:
            raise ValueError("tailcut must be at least 6")


@dataclass(frozen=True)
class TernaryShape:
    """Multiset shape for ternary vectors: a ones, b minus-ones, rest zero."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("counts must be nonnegative")
        if self.a + self.b > self.n:
            raise ValueError("a + b exceeds the vector length")


def sample_z_many(width, centers, rng, tailcut=10.0):
    """Vector of integers, entry i drawn from D_{Z, width, centers[i]}.

    Each row gets an inverse-CDF table over the integers within
    tailcut * (width / sqrt(2 pi)) of its center.
    """
    if width <= 0:
        raise ValueError("width must be positive")
    centers = np.atleast_1d(np.asarray(centers, dtype=np.float64))
    std = width / SQRT_2PI
    t = tailcut * std
    out = np.empty(centers.shape[0], dtype=np.int64)
    rows = max(1, _CHUNK_CELLS // max(1, int(2 * t) + 2))
    for start in range(0, centers.shape[0], rows):
        c = centers[start:start + rows]
        lo = np.ceil(c - t).astype(np.int64)
        hi = np.floor(c + t).astype(np.int64)
        if np.any(hi < lo):
            raise ValueError("tailcut window contains no integer")
        k = int((hi - lo).max()) + 1
        vals = lo[:, None] + np.arange(k, dtype=np.int64)[None, :]
        dev = vals - c[:, None]
        w = np.exp((-np.pi / (width * width)) * dev * dev)
        w[vals > hi[:, None]] = 0.0
        cdf = np.cumsum(w, axis=1)
        u = rng.random(c.shape[0]) * cdf[:, -1]
        idx = np.minimum((cdf <= u[:, None]).sum(axis=1), k - 1)
        out[start:start + rows] = vals[np.arange(c.shape[0]), idx]
    return out


def sample_z(params, rng):
    """One integer from D_{Z, params.sigma_width, params.center}."""
    return int(sample_z_many(params.sigma_width, [params.center], rng,
                             tailcut=params.tailcut)[0])


def sample_coset_many(q, cs, r, rng, tailcut=10.0):
    """Entry i drawn from D_{qZ + cs[i], r} (width r, centered at 0).

    Realized as q * D_{Z, r/q, -c'/q} + c' with c' = cs mod q.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    cs = np.atleast_1d(np.asarray(cs, dtype=np.int64))
    cp = cs % q
    y = sample_z_many(r / q, -cp.astype(np.float64) / q, rng, tailcut=tailcut)
    return q * y + cp


def sample_coset(q, c, r, rng):
    """One integer x with x = c (mod q), x ~ D_{qZ + (c mod q), r}."""
    return int(sample_coset_many(q, [c], r, rng)[0])


def sample_ternary(shape, rng):
    """Uniform arrangement of shape.a ones and shape.b minus-ones in Z^n.

    Fisher-Yates shuffle of the fixed multiset.
    """
    out = np.zeros(shape.n, dtype=np.int64)
    out[:shape.a] = 1
    out[shape.a:shape.a + shape.b] = -1
    for i in range(shape.n - 1, 0, -1):
        j = rng.randbelow(i + 1)
        out[i], out[j] = out[j], out[i]
    return out
