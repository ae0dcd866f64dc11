"""Exact elimination for codimension-2 toric presentations.

Given an integer matrix whose columns sum to zero, this package computes the
Chow form of the associated projective scheme, the full discriminant and its
exact factorization into facet binomials and the dual-variety discriminant,
the sparse resultants arising from Cayley configurations, and all attached
lattice polygons (Chow, secondary, Newton), entirely over arbitrary-precision
integers.
"""

from .cayley import (
    CayleyConfig,
    SparseSystem,
    build_cayley,
    check_term_bound,
    mixed_resultant,
    product_formula_check,
)
from .chow import BezoutInput, ChowForm, bezout_chow_form, build_H, chow_form
from .discriminant import (
    DiscriminantBundle,
    HornCurve,
    a_discriminant,
    dual_full_discriminant,
    facet_binomial,
    fast_dual_full_discriminant,
    full_discriminant,
    horn_implicitize,
    residual_factors,
    specialized_h,
)
from .errors import (
    Codim2Error,
    ComputationCancelled,
    ContextMismatch,
    DegenerateResultant,
    InexactDivision,
    InternalIdentityError,
    InvalidConfiguration,
    NotPrime,
    ParseError,
    PreconditionViolated,
)
from .lattice import (
    AConfig,
    BConfig,
    ConfigStats,
    RelevantLine,
    compute_stats,
    gale_dual_a,
    gale_dual_b,
    is_prime,
    relevant_lines,
    validate_a,
    validate_b,
)
from .poly import (
    Monomial,
    Poly,
    PolyMatrix,
    UniPoly,
    VarContext,
    add,
    determinant,
    exact_divide,
    format_poly,
    integer_content_and_primitive,
    mul,
    parse_poly,
    poly_from_json,
    poly_to_json,
    substitute,
    sylvester_resultant,
)
from .polygon import (
    LatticePolygon,
    boundary_point_count,
    build_PB,
    build_QB,
    chow_polygon,
    degree_DA,
    degree_via_mu,
    dehomog_newton,
    is_centrally_symmetric,
    lattice_point_count,
    mu_vector,
    newton_polygon_DA,
    newton_polygon_of,
    nu_vector,
    polygon_svg,
    secondary_polygon,
)

__version__ = "0.1.0"
