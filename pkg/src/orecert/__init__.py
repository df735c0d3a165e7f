"""Exact-arithmetic certification of truncated Ore extensions.

Constructs twisting maps for truncated Ore extensions A[x; sigma, delta],
certifies them (shuffle vanishing, hexagon relation, associativity),
lifts module structures and chain maps, and assembles certified projective
resolutions over the twisted product, all over F_p or Q with no floating
point anywhere.
"""

from .algebra import (
    Algebra,
    Element,
    LinearOperator,
    check_associativity,
    monomial_derivation,
    scalar_automorphism,
    truncated_poly_algebra,
    verify_automorphism,
    verify_sigma_derivation,
)
from .example4 import (
    Example4Params,
    build_example_resolution,
    cross_validate,
    paper_delta_chain,
    rising_factorial,
    tau_Bi_closed_form,
    tau_Bi_inverse_closed_form,
    tau_closed_form,
)
from .field import Field
from .homology import (
    ChainMap,
    ConstructionError,
    FreeComplex,
    LiftError,
    TauBChain,
    build_tau_B_chain,
    check_exactness,
    extend_x_action,
    lift_through,
    standard_truncated_resolution,
    twisted_product_complex,
    verify_chain_map,
)
from .io import read_complex, write_complex
from .modules import (
    RejectedCompat,
    TTPModule,
    build_tau_BM,
    tensor_module_action,
    verify_compatibility,
    verify_module_axioms,
    verify_phi,
)
from .report import CertificationError, Check, Report
from .shuffle import (
    shuffle_operator,
    shuffle_operator_enumerated,
    shuffle_words,
    verify_truncation_conditions,
)
from .twist import (
    RejectedTwist,
    TwistedAlgebra,
    TwistingMap,
    build_tau,
    invert_tau,
    twisted_algebra,
    verify_twisting_axioms,
)

__version__ = "0.1.0"
