"""Exact symbolic certification of BMW-type R-matrices.

Construction of the standard orthogonal and symplectic R-matrix families and
their multiparametric twists, derivation of the associated quantum-group data
(skew inverse, C/D matrices, contraction operator, bilinear pairings, X/Y),
and zero-residual verification of every defining identity over the field of
rational functions in q^(1/2).
"""

__version__ = "0.1.0"

from .scalars import (
    LaurentPoly,
    Rational,
    RationalField,
    SYMBOLIC,
    Scalar,
    ScalarField,
    arith,
    evaluate,
    is_unit_sign,
    parse,
)
from .tensors import (
    FieldMatrix,
    MultiIndex,
    TensorOperator,
    add,
    char_poly,
    compose,
    embed,
    inverse,
    is_zero,
    linear_to_multi,
    multi_to_linear,
    partial_trace,
    permutation_op,
    rank,
    scale,
    solve_multi_rhs,
    sub,
    trace,
)
from .core import (
    KappaData,
    Outcome,
    PairingPair,
    RMatrixSystem,
    SkewData,
    VerificationResult,
    XYPair,
    check_bmw_relations,
    check_pairing_factorization,
    check_prop1,
    check_skew,
    check_yang_baxter,
    detect_nu,
    factor_pairings,
    full_verification,
    kappa_of,
    rtt_lemma,
    skew_inverse,
    theorem_suite,
    xy_matrices,
)
from .families import (
    FamilySpec,
    SP_NU_NOTE,
    TwistSpec,
    TwistValidity,
    build_F,
    build_multiparametric,
    build_standard,
    check_twist_compat,
    expected_pairings,
    family_spec,
    pairings_match_up_to_gauge,
    standard_matrix,
    twist_r,
    twisted_expected,
    validate_twist,
)
from .report import (
    Report,
    build_report,
    export_rmatrix,
    import_rmatrix,
    import_twist,
    render_json,
    render_text,
)
from .cli import JobConfig, export_family, main, run_job
