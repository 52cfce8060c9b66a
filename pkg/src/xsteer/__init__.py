"""Two-qubit entropic steering, entropy squeezing, and process sweeps."""

from .qstate import (
    BellIndex,
    InvalidStateError,
    XStateParams,
    bell_mixture,
    check_density,
    from_x_params,
    is_x_structured,
    partial_trace,
    partial_trace_b,
    random_x_state,
    tensor,
    x_params_from_density,
)
from .measures import (
    NegativeProbabilityError,
    PathDisagreementError,
    PauliAxis,
    SteeringReport,
    XCoefficients,
    conditional_entropy,
    full_report,
    joint_distribution,
    marginal_distribution,
    neur_bound,
    one_way_steering,
    shannon_entropy,
    squeezing_factor,
    steerability_z,
    steering_functional,
    x_coefficients,
    xi,
)
from .processes import (
    ChannelParameterError,
    ZeroProbabilityOutcomeError,
    accelerate,
    accelerate_oracle,
    accelerated_params,
    ad_survival,
    amplitude_damping_kraus,
    apply_local_channel,
    bell_project_swap,
    completeness_defect,
    dephasing_coherence,
    dephasing_kraus,
    swap_bell_mixtures,
)
from .sweep import (
    ConfigError,
    SweepConfig,
    SweepRecord,
    emit_plot_script,
    figure_presets,
    load_csv,
    run_sweep,
    write_csv,
)

__version__ = "0.1.0"
