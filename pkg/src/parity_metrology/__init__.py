"""Two-mode Fock-space simulation of parity-detected optical interferometry."""

from .detection import (
    JointDistribution,
    ObservableResult,
    joint_distribution,
    legendre,
    measure,
    measure_j,
    measure_j_squared,
    measure_parity_b,
    measure_sigma_n,
    snr,
)
from .errors import (
    AlphaTooLarge,
    CutoffExceeded,
    DegenerateStep,
    NegativeCount,
    NonpositivePhotons,
    NotNoonForm,
    NotNormalized,
    SimulationError,
    ZeroNoise,
    ZeroNorm,
)
from .fock_space import (
    TwoModeState,
    expectation_diagonal,
    inner_product,
    mean_photon,
    normalize,
)
from .metrology import (
    StateFamily,
    SweepTable,
    UncertaintyReport,
    hl_baseline,
    phase_uncertainty,
    pinned_twin_fock_config,
    sql_baseline,
    sweep_signal,
    sweep_uncertainty,
)
from .optical_elements import (
    BeamSplitterConvention,
    MziConfig,
    beam_splitter,
    magic_interferometer_output,
    mzi,
    phase_shift,
)
from .state_factory import (
    ArcsineCoefficients,
    CoherentSpec,
    NoonSpec,
    arcsine_coefficients,
    arcsine_state,
    coherent_product,
    coherent_vacuum,
    entangled_coherent,
    noon,
    number_state,
    twin_fock,
)

__version__ = "0.1.0"
