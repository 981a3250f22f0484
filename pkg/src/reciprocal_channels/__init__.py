"""Reciprocal pairs of depolarizing and Weyl-covariant quantum channels.

Closed-form classical capacities of depolarizing channels (DCs), their
mixers and Weyl-covariant channels (WCCs), with numerical oracles that
check every closed form independently.
"""

from .capacities import (
    CapacityReport,
    CPRange,
    asymmetry_ratio_dc,
    asymmetry_ratio_wcc_ea,
    avg_output_fidelity,
    c_ea_dc,
    c_ea_wcc,
    c_ua_dc,
    cp_range_wcc,
    lambda_min_dc,
    mover_fidelity,
    q_ea,
    smin_dc,
)
from .channels import (
    ChannelRep,
    WCCSpec,
    apply,
    apply_extended,
    channel_from_spec,
    cj_spectrum,
    complementary_wcc,
    compose,
    depolarizing_channel,
    inversion_map,
    kraus_from_choi,
    identity_channel,
    mixer_channel,
    random_wcc_spec,
    wcc_channel,
    weyl_operator,
)
from .errors import (
    CPViolationError,
    DimensionError,
    InvalidDistributionError,
    InvalidStateError,
    NotAChannelError,
    ReciprocalChannelsError,
    UndefinedRatioError,
)
from .kernels import BACKEND
from .linalg import (
    haar_random_pure,
    haar_random_unitary,
    partial_trace,
    shannon_entropy,
    tensor,
    trace_norm,
    von_neumann_entropy,
)
from .oracles import (
    OptimizationResult,
    maximize_mutual_information,
    mc_average_fidelity,
    min_output_entropy,
    mutual_information,
    twirl_channel_mc,
)

__version__ = "0.1.0"
