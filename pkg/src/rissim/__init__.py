"""Received-power modelling and discrete greedy configuration of reconfigurable intelligent surfaces."""

from .channel import (
    AntennaPattern,
    LinkModel,
    Scenario,
    combined_pattern,
    ideal_phase_profile,
    pattern_value,
    power_upper_bound,
    received_power,
    reference_plate_power,
    to_db,
)
from .codebook import (
    Codebook,
    PhaseQuality,
    ReflectionState,
    equivalent_bits,
    ideal_codebook,
    load_codebook,
    measured_codebook,
    phase_quality,
    phase_std,
    quality_sweep,
    restrict,
    state_gamma,
)
from .experiment import (
    ScenarioBundle,
    SweepResult,
    bandwidth_3db,
    compare_resolutions,
    emit_results,
    load_bundled_scenario,
    load_scenario,
    optimize_and_sweep,
    quantization_study,
)
from .geometry import (
    GroupMap,
    SurfaceGrid,
    build_grid,
    column_groups,
    element_position,
    path_geometry,
)
from .optimizer import (
    Configuration,
    OptimizationTrace,
    OptimizerSettings,
    baseline_config,
    exhaustive_optimize,
    greedy_optimize,
    quantize_profile,
)

__version__ = "0.1.0"
