"""Exact arithmetic for genus-2 curves with real multiplication by the order
of discriminant 5: invariants, Mestre conics and cubics, quadratic form
reduction over polynomial rings, moduli classification, and explicit
Weierstrass models."""

from .arith import (
    FactoredInteger,
    factor,
    hilbert_symbol,
    is_norm_from_sqrt5,
    is_square,
    solve_norm_equation,
    squarefree_part,
)
from .errors import (
    ChainMismatchError,
    DegenerateCurveError,
    ExactnessError,
    NormEquationError,
    Rm5Error,
    SingularInputError,
)
from .invariants import (
    FIELD_Q,
    FIELD_Q5,
    ClebschInv,
    IgusaClebsch,
    SexticModel,
    clebsch_from_ic,
    clebsch_invariants,
    ic_from_clebsch,
    ic_from_gh,
    ic_from_mn,
    ic_from_wilson,
    ic_weighted_equal,
    igusa_clebsch_from_sextic,
    normalize_ic,
    weighted_equal,
    weighted_equal_cc,
)
from .mestre import (
    ProjPoint3,
    TernaryCubic,
    TernaryQF,
    conic_discriminant,
    conic_is_solvable,
    conic_rational_point,
    curve_from_mestre,
    mestre_conic,
    mestre_cubic,
    parametrize_conic,
)
from .moduli import (
    MNPoint,
    RM5Class,
    SurfacePoint,
    WilsonPoint,
    classify,
    classify_ic,
    classify_mn,
    classify_zgh,
    duplicate_partner,
    ek_rhs,
    galois_necessary_check,
    mn_to_zgh,
    on_shimura_X6,
    wilson_delta_prime,
    wilson_to_gh,
    zgh_to_mn,
)
from .models import ModelRequest, abc_to_mnuv, model_from_point, model_general, model_sqrt5
from .multipoly import MultiPoly, parse_poly, poly_gcd
from .qf_reduce import (
    BasisChange,
    PolyQF,
    ReductionTranscript,
    apply_basis_change,
    disc_reduce_partial,
    disc_reduce_square,
    forms_equivalent_over_Q,
    poly_degree,
    replay_infinity_chain,
    replay_rm5_chain,
    shift_variables,
    simple_degree_reduce,
    specialize,
)
from .quadfield import QuadExtElem, norm, qe_nth_root, qe_sqrt, sqrt5, trace

__version__ = "0.1.0"
