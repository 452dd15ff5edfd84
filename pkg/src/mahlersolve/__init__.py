"""Exact solver for linear Mahler equations over the rationals.

Computes complete bases of polynomial, rational, truncated power-series,
and truncated Puiseux-series solutions of
l_r(x) y(x^(b^r)) + ... + l_1(x) y(x^b) + l_0(x) y(x) = 0,
normalizes equations with zero trailing coefficient, and computes gcrds
of families of Mahler operators.
"""

from .errors import (
    ExactDivisionError,
    ExponentOverflowError,
    IncompatiblePrefixError,
    InconsistentPrefixError,
    InputFormatError,
    InsufficientPrefixError,
    InternalInvariantError,
    MahlerError,
    MixedRadixError,
    NegativeExponentError,
    NoAdmissibleEdgeError,
    UnsupportedEquationError,
    ZeroTrailingCoefficientError,
)
from .poly import (
    Poly,
    gcd,
    gcd_all,
    graeffe,
    graeffe_monic,
    lcm,
    lcm_orbit,
    mahler_substitute,
    poly_sections,
)
from .operator import (
    IDENTITY_PHI,
    MahlerOperator,
    PhiTransform,
    apply_to_poly,
    apply_truncated,
    interreduce,
    operator_section,
    operator_sections,
    phi_apply,
    primitive_part,
    right_divide,
)
from .newton import (
    PolygonEdge,
    candidate_degrees,
    candidate_valuations,
    lower_polygon,
    mu_nu,
    newton_diagram,
    ramification_data,
    select_edge_for_ramification,
    upper_polygon,
)
from .rmatrix import (
    KernelBasis,
    RowSparseMatrix,
    build_submatrix,
    entry_oracle,
    prolong,
    solve_prescribed,
)
from .solver import (
    PuiseuxSeries,
    SolutionBasis,
    TruncatedSeries,
    approximate_series_basis,
    certificate_order,
    polynomial_basis,
    polynomial_solutions_bounded,
    puiseux_basis,
    puiseux_basis_all,
    residual_valuation,
    series_basis,
)
from .rational import (
    DenominatorBound,
    RamifiedRationalFunction,
    RationalFunction,
    TranscendenceVerdict,
    alt_denominator_bound,
    bell_coons_rank,
    denominator_bound,
    ramified_rational_basis,
    rational_basis,
    transcendence_test,
)
from .normalize import gcrd, gcrd_raw, normalize_l0, normalize_l0_raw, split

__version__ = "0.1.0"
