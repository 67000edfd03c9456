"""Trapdoor-quality search shared by the two key generators.

For candidate lists f_1..f_K, g_1..g_K the scan walks (i, j) in
lexicographic order and, for each pair, picks the Galois index k in Z_n^*
minimizing the largest spectral value of f_i adj(f_i) +
sigma_k(g_j) adj(sigma_k(g_j)); ties break toward the smallest k so key
generation is reproducible from a seed.  Spectra live on the documented
evaluation-point order, where sigma_k acts as a pure index permutation.
"""

import numpy as np

from .ring import RingKind, spectrum


class KeygenRestartLimit(Exception):
    """Too many full restarts; the parameter set is misconfigured."""


RESTART_LIMIT = 64

_PERM_CACHE = {}


def unit_perms(ctx):
    """(units k, permutation matrix P) with spectrum(sigma_k(a)) = S[P[k]]."""
    key = (ctx.n, ctx.kind)
    if key not in _PERM_CACHE:
        n = ctx.n
        j = np.arange(n, dtype=np.int64)
        if ctx.kind is RingKind.CONV:
            ks = np.arange(1, n, dtype=np.int64)
            perms = (ks[:, None] * j[None, :]) % n
        else:
            ks = np.arange(1, n, 2, dtype=np.int64)
            perms = ((ks[:, None] * (2 * j[None, :] + 1)) % (2 * n) - 1) // 2
        _PERM_CACHE[key] = (ks, perms.astype(np.int64))
    return _PERM_CACHE[key]


def best_galois(F2, G2, ctx):
    """Minimizing k and the attained max spectral sum (smallest k on ties)."""
    ks, perms = unit_perms(ctx)
    scores = np.max(F2[None, :] + G2[perms], axis=1)
    best = int(np.argmin(scores))
    return int(ks[best]), float(scores[best])


def scan(fs, gs, ctx, threshold_sq):
    """Yield (i, j, k, quality_sq) for qualifying pairs in lex (i, j) order."""
    fspecs = [spectrum(f, ctx) for f in fs]
    gspecs = [spectrum(g, ctx) for g in gs]
    for i in range(len(fs)):
        for j in range(len(gs)):
            k, qsq = best_galois(fspecs[i], gspecs[j], ctx)
            if qsq <= threshold_sq:
                yield i, j, k, qsq
