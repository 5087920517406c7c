"""scramblemeter: accessible min-information of isometric quantum channels."""

from .qstate import (
    Isometry,
    Povm,
    SiteLayout,
    SubsystemSpec,
    ValidationError,
    DimensionMismatchError,
    adjoint_effect,
    apply_channel,
    choi_matrix,
    embed_effect,
    operator_norm,
    partial_trace,
    tensor,
    validate_isometry,
)
from .sdp import SdpProblem, SdpSolution, jrf_iterate, solve_discrimination, solve_sdp
from .infotheory import (
    CqState,
    Ensemble,
    h_min,
    h_min_cond,
    max_ratio_over_ensembles,
    p_guess,
    r_guess,
    robustness,
    verify_duality,
)
from .engine import (
    IminResult,
    MatrixChannel,
    NoSubsystemError,
    SeesawConfig,
    imin_acc,
    objective,
    perfect_scrambler_certificate,
    seesaw,
    sic_povm_qubit,
    ic_povm,
)
from .lmg import (
    DickeSector,
    LmgParams,
    NeverCrossedError,
    SweepRecord,
    dicke_split_coeffs,
    h_lmg,
    imin_timeseries,
    logfit,
    scrambling_time,
    scrambling_time_direct,
    single_site_channel,
    spin_operators,
    v_lmg,
)
from .qecc import CodeSpec, builtin_code, check_t_scrambler

__version__ = "0.1.0"
