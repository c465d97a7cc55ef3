"""Concordance smooth-structure computations for products M x S^k.

From the homology profile of a closed oriented 4-manifold or a simply
connected closed 5-manifold M, this package computes the stable wedge
decomposition of M, the groups [Sigma^k M, Top/O], the concordance
structure set C(M x S^k), and the concordance inertia group
I_c(M x S^k), with every table entry and derivation route cited.
"""

from .abgroup import (
    FinAbGroup,
    TRIVIAL,
    canonicalize,
    cyclic,
    direct_sum,
    enumerate_extensions,
    mult_cokernel,
    mult_kernel,
    order,
)
from .manifold import ManifoldSpec, StableSplitting, stable_splitting, validate
from .brackets import (
    ExtensionAmbiguous,
    GroupResult,
    Known,
    LowerBound,
    OutOfRange,
    closed_form_cM4,
    cone_eta_tilde_bracket,
    moore_bracket,
    sphere_bracket,
    splitting_bracket,
    susp_cp2_bracket,
)
from .inertia import InertiaResult, concordance_inertia, concordance_set

__version__ = "0.1.0"

__all__ = [
    "FinAbGroup",
    "TRIVIAL",
    "canonicalize",
    "cyclic",
    "direct_sum",
    "enumerate_extensions",
    "mult_cokernel",
    "mult_kernel",
    "order",
    "ManifoldSpec",
    "StableSplitting",
    "stable_splitting",
    "validate",
    "GroupResult",
    "Known",
    "ExtensionAmbiguous",
    "LowerBound",
    "OutOfRange",
    "sphere_bracket",
    "moore_bracket",
    "susp_cp2_bracket",
    "cone_eta_tilde_bracket",
    "splitting_bracket",
    "closed_form_cM4",
    "InertiaResult",
    "concordance_inertia",
    "concordance_set",
]
