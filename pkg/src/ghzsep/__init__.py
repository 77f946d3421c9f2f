"""Separability analysis for four-qubit GHZ-diagonal states.

Decides full separability of GHZ-diagonal four-qubit states through
optimized entanglement witnesses: closed-form product-state maxima,
matched-witness ratios, four separability criteria (necessary for every
GHZ-diagonal state, necessary and sufficient on the permutation
symmetric family), explicit separable decompositions of all boundary
states, and independent brute-force numeric cross-checks.
"""

from .states import (
    GhzProbabilities,
    HighlySymmetricParams,
    InvalidStateError,
    PauliCorrelations,
    SymmetricParams,
    XMatrixElements,
    density_matrix,
    ghz_basis_vector,
    make_highly_symmetric,
    make_symmetric,
    make_werner,
    state_from_json,
    state_to_json,
)
from .witness import (
    GPhaseCoefficients,
    LambdaResult,
    ProductState,
    SearchSettings,
    WitnessParams,
    delta_region_contains,
    f_eval,
    g_tilde,
    lambda_product_max,
    polyhedron_membership,
    witness_value,
)
from .matching import (
    CriterionCase,
    CriterionReport,
    Verdict,
    criteria,
    kay_condition,
    l_min,
    matched_witness,
    ppt_criterion,
    r_tilde,
    report_json,
)
from .boundaries import BoundarySegment, hs_boundary, hs_curve_parametrization, sym_surface
from .decompositions import (
    SeparableDecomposition,
    curve_state,
    line_state,
    rho3,
    rho4,
    rho_pm,
    sym_boundary_state,
    verify,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
