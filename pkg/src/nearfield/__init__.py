"""LOS wireless channel models from the dyadic Green's function.

Exact, spherical-wave (near-field), and planar-wave (far-field) propagation
kernels for a planar patch array, matched-filter beamforming power maps, and
SIR-constrained scheduling of users sharing one angular direction.
"""

from .arrays import (
    Beamformer,
    ChannelVector,
    DB_FLOOR,
    REFERENCE_POSITION,
    TxArray,
    array_diagonal,
    beam_power,
    build_array,
    channel_matrix,
    channel_vector,
    fraunhofer_distance,
    mf_beamformer,
    normalized_power_db,
    received_power,
    reference_power,
)
from .em import (
    FREE_SPACE_IMPEDANCE,
    Medium,
    Model,
    PatchElement,
    SPEED_OF_LIGHT,
    element_field,
    green_exact,
    green_exact_terms,
    green_exact_yy,
    kernel_far,
    kernel_near,
    patch_rule,
)
from .errors import (
    ConfigError,
    DomainError,
    NearFieldError,
    NullChannelError,
    SingularDisplacementError,
)
from .multiaccess import (
    ScheduleResult,
    SirGraph,
    UserSet,
    build_graph,
    exact_max_clique,
    heuristic_select,
    normalized_channel_matrix,
    select_users,
    sir,
    sir_matrix_from_channels,
    z_axis_users,
)
from .scenario import Scenario, parse_config, scenario_from_mappings
from .sweeps import (
    SweepSpec,
    beam_sweep,
    central_lobe_mask,
    fraunhofer_report,
    schedule_run,
    sweep_points,
)

__version__ = "0.1.0"

__all__ = [
    "Beamformer",
    "ChannelVector",
    "ConfigError",
    "DB_FLOOR",
    "DomainError",
    "FREE_SPACE_IMPEDANCE",
    "Medium",
    "Model",
    "NearFieldError",
    "NullChannelError",
    "PatchElement",
    "REFERENCE_POSITION",
    "Scenario",
    "ScheduleResult",
    "SingularDisplacementError",
    "SirGraph",
    "SPEED_OF_LIGHT",
    "SweepSpec",
    "TxArray",
    "UserSet",
    "array_diagonal",
    "beam_power",
    "beam_sweep",
    "build_array",
    "build_graph",
    "central_lobe_mask",
    "channel_matrix",
    "channel_vector",
    "element_field",
    "exact_max_clique",
    "fraunhofer_distance",
    "fraunhofer_report",
    "green_exact",
    "green_exact_terms",
    "green_exact_yy",
    "heuristic_select",
    "kernel_far",
    "kernel_near",
    "mf_beamformer",
    "normalized_channel_matrix",
    "normalized_power_db",
    "parse_config",
    "patch_rule",
    "received_power",
    "reference_power",
    "scenario_from_mappings",
    "schedule_run",
    "select_users",
    "sir",
    "sir_matrix_from_channels",
    "sweep_points",
    "z_axis_users",
]
