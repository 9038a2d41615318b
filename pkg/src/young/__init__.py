"""Multi-photon, multi-path Young interference on fixed-photon-number Fock states."""

from .coherence import (
    CoherenceReport,
    PairKind,
    PairwiseEntry,
    StateClass,
    classify_pair,
    decompose,
    l1_coherence,
)
from .fock import (
    LimitExceeded,
    PhotonState,
    StateError,
    apply_phase_shift,
    basis_size,
    enumerate_basis,
    hopping_element,
    one_body_matrix,
    parse_state,
)
from .interference import (
    FringeCurve,
    Method,
    VisibilityResult,
    fringe_curve,
    intensity,
    two_path_visibility_analytic,
    visibility,
)
from .optimize import (
    CoeffOptConfig,
    CoefficientOptimum,
    ExtremumClass,
    TorusSearchConfig,
    balanced_product_state,
    hessian_classify,
    lagrange_residual,
    maximize_visibility_coefficients,
    minimize_intensity_phases,
)

__version__ = "0.1.0"
