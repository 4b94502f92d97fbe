"""Exact arithmetic for Drinfeld cusp forms of level t.

Builds the explicit Atkin, Fricke, trace and twisted-trace matrices for
a weight/type pair over F_q[t], decomposes the space into oldforms and
newforms, machine-checks the injectivity and direct-sum theorems, and
tabulates t-adic slopes of Atkin eigenvalues via Newton polygons.  All
arithmetic is exact over F_p[t] and its fraction field.
"""

from .analysis import (
    AnalysisReport,
    SlopeTable,
    SpaceDecomposition,
    analyze,
    check_direct_sum,
    check_tt_injective,
    compute_decomposition,
    compute_slopes,
    run_identity_suite,
)
from .errors import (
    ConstructionInconsistent,
    CrosscheckMismatch,
    DeltaNotInjective,
    DimensionMismatch,
    EmptyLevelOne,
    InvalidWeightType,
    NonExactDivision,
    NotInvariant,
    NotMonic,
    TheoremViolation,
    UnsupportedFormat,
    ZeroSpace,
)
from .fppoly import (
    PrimePower,
    lucas_binomial,
    poly,
    poly_exact_div,
    poly_mul,
    prime_power_from_q,
    t_valuation,
)
from .hecke import (
    OperatorSet,
    WeightParams,
    atkin_charpoly,
    build_operators,
    decompose_weight,
    dirsum_matrix_determinant,
    induced_level1_hecke,
    m_entry,
)
from .linalg import (
    BivarPoly,
    PolyMatrix,
    SlopeMultiset,
    Subspace,
    bareiss_det,
    charpoly,
    kernel_basis,
    mat_mul,
    newton_polygon,
    poly_matrix,
    restrict_operator,
    subspace_contains,
    subspace_intersect,
    subspace_sum,
)
from .ratfn import RatFn, ratfn_reduce
from .report import ReportDocument, parse_report, serialize_report

__version__ = "0.1.0"
