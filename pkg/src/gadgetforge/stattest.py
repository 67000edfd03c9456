"""Statistical simulatability harness.

Compares real signing statistics against the security proof's simulator,
which draws the preimage z ~ D_{Z^m, s_width} and the error e uniform over
Z_p^n independently of the key.  Five checks:

  variance      per-coefficient variance of the preimage within 3% of
                s_width^2 / (2 pi) = s^2 (table units)
  mean          per-coefficient mean within 4 standard errors of 0
  e_uniform     chi-square of the pooled error coordinates against uniform
                over Z_p at significance 1e-3
  correlation   |empirical correlation| of fixed coordinate pairs below
                4 / sqrt(N)
  restart_rate  fraction of signings that needed a restart, within
                [0.2%, 3%]

Accepted-signature preimages are accumulated streaming, so memory stays
O(m + p) regardless of the trial count.

``width_scale`` is a debug knob multiplying every Gaussian width in the
signer (s and r together, which keeps the covariance factorization well
defined); 1.0 is the honest scheme, anything else is a negative control
that must trip the variance check against the honest reference.
"""

import dataclasses
import math

import numpy as np
from scipy.stats import chi2

from . import eagle, robin
from .rng import XofRng

RESTART_LO = 0.002
RESTART_HI = 0.03
CHI2_SIGNIFICANCE = 1e-3
VARIANCE_RTOL = 0.03
MEAN_SE_LIMIT = 4.0


def fixed_pairs(n, m):
    """The a-priori coordinate pairs probed by the correlation check."""
    return [(0, 1), (0, 2), (1, 3), (0, n), (n, n + 1), (n, m - 1)]


def _make_signer(scheme, params, rng, width_scale):
    """Key plus a closure msg -> (sig, attempts, preimage, error)."""
    if width_scale != 1.0:
        eff = dataclasses.replace(params, s=params.s * width_scale,
                                  r=params.r * width_scale)
    else:
        eff = params
    if scheme == "robin":
        _, key = robin.robin_keygen(params, rng)
        if eff is not params:
            key = dataclasses.replace(
                key, signer=robin.build_signer(key.f, key.g, key.h, eff))
        return lambda msg: robin._sign_attempts(msg, key, eff, rng)
    if scheme == "eagle":
        key = eagle.eagle_keygen(params, rng)
        if eff is not params:
            key = dataclasses.replace(
                key, signer=eagle.build_signer(key.f, key.g, key.seed_a,
                                               key.b_poly, eff))
        return lambda msg: eagle._sign_attempts(msg, key, eff, rng)
    raise ValueError("scheme must be robin or eagle")


def run_simulatability(scheme, params, trials, seed, width_scale=1.0):
    """Sign `trials` random messages with one key and report the suite.

    Returns a JSON-serializable dict; report["all_pass"] aggregates the
    five checks (each check also carries its measured statistic).
    """
    if trials < 10 ** 4:
        raise ValueError("trials must be at least 10^4")
    rng = XofRng(seed)
    sign_attempts = _make_signer(scheme, params, rng, width_scale)

    n, m, p = params.n, params.m, params.p
    pairs = fixed_pairs(n, m)
    ia = np.array([a for a, _ in pairs])
    ib = np.array([b for _, b in pairs])
    sums = np.zeros(m)
    sqsums = np.zeros(m)
    pair_sums = np.zeros(len(pairs))
    e_hist = np.zeros(p, dtype=np.int64)
    restarts = 0

    for _ in range(trials):
        msg = rng.bytes(32)
        _, attempts, x, e = sign_attempts(msg)
        restarts += attempts - 1
        xf = x.astype(np.float64)
        sums += xf
        sqsums += xf * xf
        pair_sums += xf[ia] * xf[ib]
        e_hist += np.bincount(e + p // 2, minlength=p)

    N = trials
    target_var = params.s ** 2          # honest reference: s_width^2/(2 pi)
    mean = sums / N
    var = sqsums / N - mean ** 2
    var_rel_dev = float(np.max(np.abs(var - target_var)) / target_var)
    se = math.sqrt(target_var / N)
    mean_max_z = float(np.max(np.abs(mean)) / se)

    expected = e_hist.sum() / p
    chi2_stat = float(((e_hist - expected) ** 2 / expected).sum())
    chi2_crit = float(chi2.isf(CHI2_SIGNIFICANCE, p - 1))

    corr = pair_sums / N / target_var
    corr_max = float(np.max(np.abs(corr)))
    corr_limit = MEAN_SE_LIMIT / math.sqrt(N)

    restart_rate = restarts / N

    checks = {
        "variance": {
            "max_rel_dev": var_rel_dev,
            "tolerance": VARIANCE_RTOL,
            "target": target_var,
            "pass": var_rel_dev <= VARIANCE_RTOL,
        },
        "mean": {
            "max_abs_z": mean_max_z,
            "limit": MEAN_SE_LIMIT,
            "pass": mean_max_z <= MEAN_SE_LIMIT,
        },
        "e_uniform": {
            "chi2": chi2_stat,
            "critical": chi2_crit,
            "dof": p - 1,
            "significance": CHI2_SIGNIFICANCE,
            "pass": chi2_stat <= chi2_crit,
        },
        "correlation": {
            "max_abs": corr_max,
            "limit": corr_limit,
            "pairs": pairs,
            "pass": corr_max <= corr_limit,
        },
        "restart_rate": {
            "rate": restart_rate,
            "lo": RESTART_LO,
            "hi": RESTART_HI,
            "pass": RESTART_LO <= restart_rate <= RESTART_HI,
        },
    }
    return {
        "schema_version": 1,
        "scheme": scheme,
        "paramset": params.name,
        "trials": trials,
        "seed": seed.hex() if isinstance(seed, (bytes, bytearray)) else str(seed),
        "width_scale": width_scale,
        "checks": checks,
        "all_pass": all(c["pass"] for c in checks.values()),
    }


def format_report(report):
    lines = ["simulatability suite: %s / %s (N=%d)"
             % (report["scheme"], report["paramset"], report["trials"])]
    for name, chk in report["checks"].items():
        status = "PASS" if chk["pass"] else "FAIL"
        detail = {k: v for k, v in chk.items() if k not in ("pass", "pairs")}
        parts = ", ".join("%s=%.6g" % (k, v) if isinstance(v, float) else
                          "%s=%s" % (k, v) for k, v in detail.items())
        lines.append("  %-12s %s  (%s)" % (name, status, parts))
    lines.append("overall: %s" % ("PASS" if report["all_pass"] else "FAIL"))
    return "\n".join(lines)
