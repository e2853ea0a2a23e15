"""Exact quantum dilogarithm identities for square products of type-A quivers.

The package builds the quantum algebra of A_n x A_n' grid quivers, computes
ordered quantum dilogarithm products, enumerates strata of the representation
space, and verifies the resulting q-series identities coefficient by
coefficient at a configurable truncation.
"""

from .errors import (
    AxisMismatch,
    BoxMismatch,
    DimensionMismatch,
    IncompleteOrder,
    InvalidOrder,
    NonUnitLeadingCoefficient,
    QDilogError,
    ZeroVectorOperand,
)
from .qseries import LaurentPoly, QSeries, involute, poincare_P
from .quiver import (
    HORIZONTAL,
    VERTICAL,
    GridQuiver,
    Quiver,
    euler_form,
    lambda_form,
    quadratic_forms,
    square_product,
    tits_form,
)
from .roots import (
    GridRoot,
    RootOrder,
    all_roots,
    canonical_order,
    intersect,
    order_matrix,
    overlap_size,
    r_floor,
    random_valid_order,
    rho,
    right_left_counts,
    sc,
    tridiagonal_signature,
    up_down_counts,
    validate_order,
)
from .strata import (
    KostantPartition,
    LineQuiver,
    Stratum,
    c_eta,
    codim_orbit,
    codim_stratum,
    dext,
    dhom,
    enumerate_kostant,
    enumerate_strata,
    geometric_sum,
    line_quiver,
    normal_form,
    poincare_stratum,
    strata_table,
    w_shift,
)
from .qalgebra import (
    AlgebraElement,
    Monomial,
    basis_product,
    dilog,
    monomial_product_scalar,
    ordered_dilog_product,
    power,
    predict_si_pi,
)
from .verify import (
    BettiTable,
    IdentityMismatch,
    Verdict,
    betti_table,
    check_55_keller,
    check_pentagon,
    check_theorem_mt,
    coefficient_crosscheck,
    dt_invariant,
)

__version__ = "0.1.0"
