"""Core-SVP attack-cost estimation.

Key recovery runs the primal attack on the lattice defined by
[A | I | b]: BKZ-beta succeeds once

    ||(f, g, -1)|| * sqrt(3 beta / (4 d')) <= delta_beta^(2 beta - d' - 1)
                                              * Q^((n - l) / d')

where d' = 2n + 1 - k - l after guessing k zero positions of f (adding
log2(C(n,k) / C(n-a-b,k)) bits of search cost) and dropping l rows.

Forgery is an approximate-CVP instance in the twisted norm; the
nearest-colattice condition makes blocksize b sufficient once some
sublattice dimension D = d - k ranges in [n, d] with

    delta_b^D * Q^(n/D) * gamma^((D - n)/D) <= beta_accept.

Costs follow the Core-SVP model: 2^(0.292 beta) classically and
2^(0.265 beta) quantumly.
"""

import math
from dataclasses import dataclass

CLASSICAL_EXPONENT = 0.292
QUANTUM_EXPONENT = 0.265
BETA_MIN = 60
BETA_MAX = 1200


class Infeasible(Exception):
    """No blocksize below the search limit satisfies the success condition."""


def root_hermite(beta):
    """delta_beta = ((pi beta)^(1/beta) * beta / (2 pi e))^(1 / (2(beta-1)))."""
    if beta <= 50:
        raise ValueError("the root-Hermite approximation needs beta > 50")
    inner = (math.pi * beta) ** (1.0 / beta) * beta / (2 * math.pi * math.e)
    return inner ** (1.0 / (2 * (beta - 1)))


# delta and log-delta are shared by every scan; precompute once
_LN_DELTA = {beta: math.log(root_hermite(beta))
             for beta in range(BETA_MIN, BETA_MAX + 1)}


def _keyrec_feasible(beta, norm, n_eff, dprime, lnQ):
    lhs = math.log(norm) + 0.5 * math.log(3 * beta / (4.0 * dprime))
    rhs = (2 * beta - dprime - 1) * _LN_DELTA[beta] + lnQ * n_eff / dprime
    return lhs <= rhs


def _min_beta_keyrec(row, k, l):
    """Smallest feasible blocksize for the primal attack after guessing k
    zeros and dropping l rows, or None (plain integer scan, smallest
    first)."""
    n = row.n
    dprime = 2 * n + 1 - k - l
    n_eff = n - l
    if dprime <= BETA_MIN or n_eff < 1:
        return None
    lnQ = math.log(row.Q)
    norm = row.secret_norm
    for beta in range(BETA_MIN, min(BETA_MAX, dprime) + 1):
        if _keyrec_feasible(beta, norm, n_eff, dprime, lnQ):
            return beta
    return None


def guess_bits(row, k):
    """log2 of the inverse probability that k guessed positions of f are
    all zeros."""
    if k == 0:
        return 0.0
    zeros = row.n - row.a - row.b
    if k > zeros:
        return math.inf
    return math.log2(math.comb(row.n, k)) - math.log2(math.comb(zeros, k))


@dataclass(frozen=True)
class KeyRecovery:
    beta: int
    k: int
    l: int
    bits_classical: int
    bits_quantum: int


def estimate_key_recovery(row, k_grid=None, l_grid=None):
    """Cheapest primal key recovery over the (k, l) grid.

    The baseline (k = l = 0) is always included; the grid is scanned
    coarsely and then refined around the best cell.
    """
    zeros = row.n - row.a - row.b
    if k_grid is None:
        k_grid = list(range(0, min(49, zeros + 1), 4))
    if l_grid is None:
        l_grid = list(range(0, min(row.n, 769), 16))

    def cost_of(k, l):
        beta = _min_beta_keyrec(row, k, l)
        if beta is None:
            return None
        return CLASSICAL_EXPONENT * beta + guess_bits(row, k), beta

    best = None
    for k in k_grid:
        for l in l_grid:
            got = cost_of(k, l)
            if got and (best is None or got[0] < best[0]):
                best = (got[0], got[1], k, l)
    if best is None:
        raise Infeasible("no blocksize below %d recovers the key" % BETA_MAX)
    # refine around the winning cell
    _, _, k0, l0 = best
    for k in range(max(0, k0 - 3), min(zeros, k0 + 3) + 1):
        for l in range(max(0, l0 - 15), l0 + 16):
            got = cost_of(k, l)
            if got and got[0] < best[0]:
                best = (got[0], got[1], k, l)
    _, beta, k, l = best
    g = guess_bits(row, k)
    return KeyRecovery(
        beta=beta, k=k, l=l,
        bits_classical=math.floor(CLASSICAL_EXPONENT * beta + g),
        bits_quantum=math.floor(QUANTUM_EXPONENT * beta + g))


@dataclass(frozen=True)
class Forgery:
    beta: int
    k: int
    bits_classical: int
    bits_quantum: int


def _forge_score(beta, D, n, lnQ, lngamma):
    return D * _LN_DELTA[beta] + lnQ * n / D + lngamma * (D - n) / D


def _forge_best_k(beta, row):
    """Minimizing sublattice dimension D = d - k for this blocksize.

    The score is convex in D, so the continuous optimum rounded to its
    integer neighbours (clamped to [n, d]) is exact.
    """
    n, d = row.n, row.forge_dim
    lnQ = math.log(row.Q)
    lngamma = math.log(row.gamma)
    if lnQ <= lngamma:
        d_star = n      # score increasing in D: boundary optimum
    else:
        d_star = math.sqrt(n * (lnQ - lngamma) / _LN_DELTA[beta])
    cands = {n, d, max(n, min(d, math.floor(d_star))),
             max(n, min(d, math.ceil(d_star)))}
    best = min(cands, key=lambda D: _forge_score(beta, D, n, lnQ, lngamma))
    return best, _forge_score(beta, best, n, lnQ, lngamma)


def estimate_forgery(row):
    """Smallest blocksize forging a signature within the twisted-norm bound."""
    ln_bound = math.log(row.beta_accept)
    for beta in range(BETA_MIN, BETA_MAX + 1):
        D, score = _forge_best_k(beta, row)
        if score <= ln_bound:
            return Forgery(
                beta=beta, k=row.forge_dim - D,
                bits_classical=math.floor(CLASSICAL_EXPONENT * beta),
                bits_quantum=math.floor(QUANTUM_EXPONENT * beta))
    raise Infeasible("no blocksize below %d forges" % BETA_MAX)
