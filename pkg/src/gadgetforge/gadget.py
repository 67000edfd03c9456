"""The compact scalar gadget (P, Q) = (p*I_n, q*I_n) with p*q = Qmod.

The gadget sampler is semi-random: the error is decoded deterministically
from the target (coefficient-wise centered mod p) and only the preimage is
randomized, one coset sample D_{qZ + c_i, r} per coordinate.  Generic
approximate preimage sampling composes a perturbation, the gadget sampler,
and an abstract trapdoor map with A T = p I mod Qmod.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .gauss import sample_coset_many
from .perturb import sample_perturbation
from .ring import center_mod


@dataclass(frozen=True)
class GadgetParams:
    """Scalar gadget descriptor; r is the gadget sampling width."""

    p: int
    q: int
    Qmod: int
    r: float

    def __post_init__(self):
        if self.p < 2 or self.q < 1:
            raise ValueError("p >= 2 and q >= 1 required")
        if self.p * self.q != self.Qmod:
            raise ValueError("p*q must equal Qmod")
        if not self.r > 0:
            raise ValueError("r must be positive")


@dataclass
class TrapdoorMap:
    """Abstract trapdoor: apply_A maps Z^m -> centered Z_Qmod^n, apply_T
    maps Z^n -> Z^m, with apply_A(apply_T(v)) = p*v mod Qmod."""

    apply_A: Callable
    apply_T: Callable
    m: int
    n: int


def decode_mod_p(u, p):
    """Split u = p*c + e with e the centered residue mod p (deterministic)."""
    if p < 2:
        raise ValueError("p must be at least 2")
    u = np.asarray(u, dtype=np.int64)
    e = center_mod(u, p)
    c = (u - e) // p
    return c, e


def gadget_sample(u, g, rng):
    """Preimage x with p*x = u - e (mod Qmod), e the decode error of u."""
    c, _ = decode_mod_p(u, g.p)
    return sample_coset_many(g.q, c, g.r, rng)


def presamp(td, g, u, s, perturb, rng):
    """Approximate preimage x of u for A: apply_A(x) = u - e mod Qmod.

    The caller guarantees s^2 >= (r^2 + eta^2) (s1(T)^2 + 1) through the
    parameter set; perturb must have been built for (td, s, g.r).
    """
    if perturb.m != td.m:
        raise ValueError("perturbation context does not match the trapdoor")
    if abs(perturb.s_width - s) > 1e-9 * max(1.0, s):
        raise ValueError("perturbation context was built for a different s")
    p_vec = sample_perturbation(perturb, rng)
    u_shift = center_mod(np.asarray(u, dtype=np.int64) - td.apply_A(p_vec), g.Qmod)
    x_gad = gadget_sample(u_shift, g, rng)
    return p_vec + td.apply_T(x_gad)
