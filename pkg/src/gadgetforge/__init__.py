"""Compact-gadget approximate trapdoors and two hash-and-sign signatures.

The gadget matrix is p*I_n with companion q*I_n (p*q = Q): errors are
decoded deterministically mod p and preimages sampled over cosets of qZ.
On top of it sit an NTRU-based scheme ("robin", convolution ring) and a
Ring-LWE-based scheme ("eagle", power-of-two cyclotomic).
"""

from .codec import MalformedEncoding, entropy_estimate, hash_to_point
from .eagle import (EagleKeyPair, EaglePublicKey, EagleSignature,
                    eagle_keygen, eagle_sign, eagle_verify, expand_seed)
from .gadget import GadgetParams, TrapdoorMap, decode_mod_p, gadget_sample, presamp
from .gauss import (GaussParams, TernaryShape, sample_coset, sample_ternary,
                    sample_z)
from .keysearch import KeygenRestartLimit
from .params import EagleParams, RobinParams, available_names, get_params
from .perturb import (NotPositiveDefinite, PerturbContext, RingTrapdoor,
                      build_context, sample_perturbation)
from .ring import (NotInvertible, Poly, RingCtx, RingKind, Spectrum, adjoint,
                   galois, invert_mod_2k, quality, ring_mul, spectrum)
from .rng import XofRng
from .robin import (RobinPublicKey, RobinSecretKey, RobinSignature,
                    robin_keygen, robin_sign, robin_verify)

__version__ = "0.1.0"
