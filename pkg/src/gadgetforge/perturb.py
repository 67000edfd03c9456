"""Offline/online perturbation sampling for the preimage sampler.

Draws p ~ D_{Z^m, sqrt(Sigma_p)} with Sigma_p = s^2 I_m - r^2 T T^t by the
standard two-stage convolution: a continuous Gaussian of width-matrix C with
C C^t = Sigma_p - rbar^2 I (the offline part), then coordinate-wise
randomized rounding with online width rbar.

Two factorizations are provided:

  DENSE     Cholesky of the explicitly assembled m x m matrix (reference
            path, used by tests and cross-checks).
  SPECTRAL  The trapdoor blocks are ring elements, so T T^t is block-
            (anti)circulant and Sigma_p splits under the complex embedding
            into n small Hermitian matrices (2x2 for two-block trapdoors,
            3x3 with an identity block).  Per-frequency Cholesky factors
            give O(n log n) sampling and O(n) storage.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .gauss import SQRT_2PI, sample_z_many
from .ring import CachedMul, RingCtx, matform


class NotPositiveDefinite(Exception):
    """Sigma_p - rbar^2 I is not positive definite for this (s, r, T)."""


@dataclass(frozen=True)
class RingTrapdoor:
    """Structured trapdoor T = [M(g); M(f)] or [M(g); M(f); I_n]."""

    ctx: RingCtx
    g: np.ndarray
    f: np.ndarray
    identity_block: bool = False

    @property
    def nblocks(self):
        return 3 if self.identity_block else 2

    @property
    def m(self):
        return self.nblocks * self.ctx.n

    def dense(self):
        blocks = [matform(self.g, self.ctx), matform(self.f, self.ctx)]
        if self.identity_block:
            blocks.append(np.eye(self.ctx.n, dtype=np.int64))
        return np.vstack(blocks)

    def embed_blocks(self):
        """Per-frequency column vector of T's embedding, shape (n, d)."""
        cols = [self.ctx.embed(self.g.astype(np.float64)),
                self.ctx.embed(self.f.astype(np.float64))]
        if self.identity_block:
            cols.append(np.ones(self.ctx.n, dtype=np.complex128))
        return np.stack(cols, axis=-1)

    @cached_property
    def _g_mul(self):
        return CachedMul(self.g, self.ctx)

    @cached_property
    def _f_mul(self):
        return CachedMul(self.f, self.ctx)

    def apply(self, v):
        """T v over the integers (exact)."""
        parts = [self._g_mul.mul(v), self._f_mul.mul(v)]
        if self.identity_block:
            parts.append(np.asarray(v, dtype=np.int64))
        return np.concatenate(parts)


@dataclass
class PerturbContext:
    """Factored covariance; immutable after construction, safe to share."""

    m: int
    rbar: float
    s_width: float
    mode: str
    dense_factor: np.ndarray = None
    spectral_chol: np.ndarray = None      # (n, d, d) complex
    trapdoor: RingTrapdoor = None


def _dense_sigma(T_dense, s, r):
    m = T_dense.shape[0]
    Td = T_dense.astype(np.float64)
    return s * s * np.eye(m) - r * r * (Td @ Td.T)


def build_context(T_blocks, s, r, rbar, mode="SPECTRAL"):
    """Factor Sigma_p - rbar^2 I for T given as ring blocks or a dense matrix.

    Raises NotPositiveDefinite when the requested widths violate the
    positivity precondition (this doubles as the positivity certificate:
    numpy's Cholesky fails exactly when an eigenvalue is nonpositive).
    """
    mode = mode.upper()
    if mode == "DENSE":
        Td = T_blocks.dense() if isinstance(T_blocks, RingTrapdoor) else np.asarray(T_blocks)
        sigma = _dense_sigma(Td, s, r)
        target = sigma - rbar * rbar * np.eye(sigma.shape[0])
        try:
            C = np.linalg.cholesky(target)
        except np.linalg.LinAlgError as exc:
            raise NotPositiveDefinite(str(exc)) from None
        recon = C @ C.T + rbar * rbar * np.eye(sigma.shape[0])
        rel = np.linalg.norm(recon - sigma) / np.linalg.norm(sigma)
        if rel > 1e-8:
            raise NotPositiveDefinite("factor reconstruction off by %.3g" % rel)
        td = T_blocks if isinstance(T_blocks, RingTrapdoor) else None
        return PerturbContext(m=sigma.shape[0], rbar=rbar, s_width=s,
                              mode="DENSE", dense_factor=C, trapdoor=td)
    if mode != "SPECTRAL":
        raise ValueError("mode must be DENSE or SPECTRAL")
    if not isinstance(T_blocks, RingTrapdoor):
        raise ValueError("SPECTRAL mode needs a RingTrapdoor")
    td = T_blocks
    V = td.embed_blocks()                       # (n, d)
    d = V.shape[-1]
    blocks = ((s * s - rbar * rbar) * np.eye(d)[None, :, :]
              - (r * r) * V[:, :, None] * V[:, None, :].conj())
    try:
        C = np.linalg.cholesky(blocks)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from None
    return PerturbContext(m=td.m, rbar=rbar, s_width=s, mode="SPECTRAL",
                          spectral_chol=C, trapdoor=td)


def _continuous_centers(ctx, rng, count):
    """count draws of the continuous stage, shape (count, m); width units."""
    if ctx.mode == "DENSE":
        y = rng.normals(count * ctx.m).reshape(count, ctx.m)
        return (y @ ctx.dense_factor.T) / SQRT_2PI
    td = ctx.trapdoor
    n = td.ctx.n
    d = td.nblocks
    C = ctx.spectral_chol
    selfc, (lo, hi) = td.ctx.conj_pairs()
    xi = np.zeros((count, n, d), dtype=np.complex128)
    if lo.size:
        wr = rng.normals(count * lo.size * d).reshape(count, lo.size, d)
        wi = rng.normals(count * lo.size * d).reshape(count, lo.size, d)
        w = (wr + 1j * wi) / np.sqrt(2.0)
        xi[:, lo, :] = np.einsum("jab,cjb->cja", C[lo], w)
        xi[:, hi, :] = xi[:, lo, :].conj()
    if selfc.size:
        w0 = rng.normals(count * selfc.size * d).reshape(count, selfc.size, d)
        xi[:, selfc, :] = np.einsum("jab,cjb->cja", C[selfc].real, w0)
    xi *= np.sqrt(n)
    parts = [td.ctx.unembed_real(xi[:, :, b]) for b in range(d)]
    return np.concatenate(parts, axis=1) / SQRT_2PI


def sample_perturbation(ctx, rng, count=None):
    """Perturbation vector(s) ~ D_{Z^m, sqrt(Sigma_p)}.

    Returns shape (m,) or (count, m).
    """
    batch = 1 if count is None else int(count)
    centers = _continuous_centers(ctx, rng, batch)
    p = sample_z_many(ctx.rbar, centers.ravel(), rng).reshape(batch, ctx.m)
    return p[0] if count is None else p
