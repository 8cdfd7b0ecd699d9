"""Hermitian self-orthogonal truncated generalised Reed-Solomon codes.

Construct truncated GRS codes over GF(q^2) from low-degree polynomials,
compute the puncture code of the Reed-Solomon code three independent ways,
and verify minimum-weight formulas and polynomial constructions by
exhaustive computation at small q.
"""

from .errors import (
    CapExceeded,
    HermgrsError,
    MalformedInput,
    SelfCheckFailed,
    ValidationRefused,
)
from .field import (
    Felt,
    FieldCtx,
    frobenius,
    make_field,
    norm,
    skew_element,
    solve_norm,
    trace_to_prime,
    trace_to_subfield,
)
from .grscode import (
    CodeParams,
    GrsCode,
    build_rs,
    check_mds,
    hermitian_gram,
    is_hermitian_self_orthogonal,
    min_weight,
    quantum_params,
    truncate_scale,
)
from .poly import Poly, distinct_zeros, q_power_mod
from .puncture import (
    PunctureBasis,
    PunctureVector,
    UPoly,
    g_form_vector,
    membership,
    min_weight_formula,
    min_weight_pc,
    puncture_direct,
    u_space_basis,
    weight_distribution,
)
from .constructions import (
    ConstructionReport,
    build_custom,
    build_even_q_min,
    build_example1,
    build_example2,
    build_example3,
    build_odd_q_min,
    build_qsq_plus_one,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CodeParams",
    "ConstructionReport",
    "Felt",
    "FieldCtx",
    "GrsCode",
    "HermgrsError",
    "MalformedInput",
    "Poly",
    "PunctureBasis",
    "PunctureVector",
    "SelfCheckFailed",
    "UPoly",
    "ValidationRefused",
    "build_custom",
    "build_even_q_min",
    "build_example1",
    "build_example2",
    "build_example3",
    "build_odd_q_min",
    "build_qsq_plus_one",
    "build_rs",
    "check_mds",
    "distinct_zeros",
    "frobenius",
    "g_form_vector",
    "hermitian_gram",
    "is_hermitian_self_orthogonal",
    "make_field",
    "membership",
    "min_weight",
    "min_weight_formula",
    "min_weight_pc",
    "norm",
    "puncture_direct",
    "q_power_mod",
    "quantum_params",
    "skew_element",
    "solve_norm",
    "trace_to_prime",
    "trace_to_subfield",
    "truncate_scale",
    "u_space_basis",
    "weight_distribution",
]
