"""Generalized contact interactions and their Kronig-Penney band structures.

Covers the self-adjoint and PT-symmetric zero-range interaction families:
bound spectra and the PT pitchfork, S-matrix analysis with breaking
detection, and exact plus narrow-band lattice dispersions including the
band-touching cone.
"""

from .boundstates import (
    BoundStateSet,
    BranchSign,
    PitchforkPoint,
    PtPhase,
    RootParametrization,
    SpectrumKind,
    bound_states,
    dispersion_roots,
    from_root_parametrization,
    pitchfork_scan,
    pt_phase,
)
from .errors import DegenerateEigenproblemError, DomainError, RealAxisPoleError
from .kronig import (
    BandPoint,
    BandStructure,
    DiracConeParams,
    LatticeParams,
    PTNarrowBand,
    Regime,
    RegimeSummary,
    band_sweep,
    bloch_determinant,
    boundary_matrix,
    cell_matrix,
    classify_regime,
    default_zone_grid,
    dirac_cone_bands,
    fold_to_zone,
    hermitian_narrowband,
    narrowband_displacements,
    propagation_matrix,
    pt_narrowband,
    quantization_residual,
    solve_band,
    summarize_regime,
)
from .numerics import (
    RootFindConfig,
    eig_2x2,
    newton_complex,
    solve_2x2,
    solve_quadratic_stable,
)
from .params import (
    ContactParams,
    SymmetryClass,
    TrajectoryKind,
    TrajectoryParams,
    ValidationReport,
    Violation,
    classify_symmetry,
    from_delta_strength,
    from_json,
    from_record,
    hermitian,
    normalize_phase,
    pt_from_alpha_beta,
    pt_image,
    pt_symmetric,
    to_json,
    to_record,
    trajectory_point,
    validate,
)
from .scattering import (
    BreakingWindowPoint,
    LorentzianFit,
    ResonanceProfile,
    ScatteringSolution,
    SMatrixEigenproblem,
    UnimodularityState,
    pt_breaking_window,
    resonance_profile,
    s_eigenvalues,
    scatter,
    transmission_amplitude,
    unimodularity_margin,
)

__version__ = "0.1.0"
