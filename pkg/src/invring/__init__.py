"""Exact-arithmetic computations with invariant rings of finite matrix groups.

Truncated invariant and Veronese subrings over Z, Q, F_p, and Z localized at
p; transfer and Reynolds maps; cyclic group cohomology through the periodic
trace complex; degree-truncated Cohen-Macaulay and Gorenstein certificates;
and divisor maps with class groups of quadratic integer rings.
"""

__version__ = "0.1.0"

from .domains import GF, QQ, ZZ, CoefficientDomain, Z_local, parse_domain
from .groups import (
    BoundExceeded,
    MatrixGroup,
    NotSubgroup,
    coset_representatives,
    enumerate_group,
    sylow_subgroup,
    trivial_group,
)
from .invariants import (
    HilbertFunction,
    IndexNotInvertible,
    NotHInvariant,
    NotInvertible,
    TruncatedSubalgebra,
    hilbert_function,
    invariant_basis,
    is_standard_graded_up_to,
    minimal_generators_up_to,
    reynolds,
    transfer,
    truncated_invariant_ring,
    veronese,
)
from .linalg import (
    IntegerMatrix,
    SmithForm,
    cokernel_invariant_factors,
    hermite_normal_form,
    integer_kernel_basis,
    smith_normal_form,
)
from .poly import (
    GradedRing,
    Polynomial,
    act,
    action_matrix,
    format_polynomial,
    graded_piece_basis,
    parse_polynomial,
)
from .cohomology import (
    CohomologyGroup,
    CyclicModule,
    EigenvaluesNotInField,
    PreconditionViolated,
    cohomology,
    diagonalize_over_fraction_field,
    graded_cohomology,
    trace_matrix,
    verify_h1_degree0,
    verify_h2_trivial_mod_pi,
    verify_pi_annihilates_h1,
)
from .cmcert import (
    CMCertificate,
    NotStandardGraded,
    NumeratorNotTerminated,
    cm_certificate,
    find_sop_mixed,
    find_sop_mod_p,
    gorenstein_symmetry_check,
    reduce_mod_p,
    regular_sequence_certificate,
    veronese_cm_search,
)
from .quadratic import (
    BoundTooLarge,
    Divisor,
    NumberRing,
    PrimeIdealQ,
    ZeroElement,
    class_group,
    divisor_map,
    factor_element,
    primes_above,
    ramification_length,
    verify_div_compatibility,
)

__all__ = [
    "__version__",
    "CoefficientDomain",
    "ZZ",
    "QQ",
    "GF",
    "Z_local",
    "parse_domain",
    "IntegerMatrix",
    "SmithForm",
    "hermite_normal_form",
    "smith_normal_form",
    "integer_kernel_basis",
    "cokernel_invariant_factors",
    "GradedRing",
    "Polynomial",
    "graded_piece_basis",
    "act",
    "action_matrix",
    "parse_polynomial",
    "format_polynomial",
    "MatrixGroup",
    "enumerate_group",
    "sylow_subgroup",
    "coset_representatives",
    "trivial_group",
    "BoundExceeded",
    "NotSubgroup",
    "TruncatedSubalgebra",
    "HilbertFunction",
    "truncated_invariant_ring",
    "invariant_basis",
    "hilbert_function",
    "veronese",
    "is_standard_graded_up_to",
    "minimal_generators_up_to",
    "reynolds",
    "transfer",
    "NotInvertible",
    "NotHInvariant",
    "IndexNotInvertible",
    "CyclicModule",
    "CohomologyGroup",
    "trace_matrix",
    "cohomology",
    "graded_cohomology",
    "verify_h2_trivial_mod_pi",
    "verify_h1_degree0",
    "verify_pi_annihilates_h1",
    "diagonalize_over_fraction_field",
    "PreconditionViolated",
    "EigenvaluesNotInField",
    "CMCertificate",
    "reduce_mod_p",
    "find_sop_mod_p",
    "find_sop_mixed",
    "regular_sequence_certificate",
    "cm_certificate",
    "veronese_cm_search",
    "gorenstein_symmetry_check",
    "NotStandardGraded",
    "NumeratorNotTerminated",
    "NumberRing",
    "PrimeIdealQ",
    "Divisor",
    "factor_element",
    "primes_above",
    "ramification_length",
    "divisor_map",
    "verify_div_compatibility",
    "class_group",
    "ZeroElement",
    "BoundTooLarge",
]
