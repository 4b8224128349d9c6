"""Multi-drone toxic plume survey simulator."""

from ._core import (
    ConcentrationField,
    ConfigError,
    DangerThreshold,
    ErrorReport,
    EstimateGrid,
    InfeasibleError,
    KernelSpec,
    LabelGrid,
    LaneGraph,
    MissionConfig,
    MissionResult,
    Phase2Stats,
    PlumeSource,
    Region,
    RoutePlan,
    Sample,
    Strategy,
    Vec2,
    VrpInstance,
    box_of,
    build_lane_graph,
    classify,
    estimate_at,
    estimate_grid,
    ground_truth_labels,
    heading_interval,
    parse_config,
    route_time,
    run_experiment_csv,
    run_mission,
    score,
    solve_exact,
    solve_heuristic,
    validate_plan,
)

__all__ = [
    "ConcentrationField",
    "ConfigError",
    "DangerThreshold",
    "ErrorReport",
    "EstimateGrid",
    "InfeasibleError",
    "KernelSpec",
    "LabelGrid",
    "LaneGraph",
    "MissionConfig",
    "MissionResult",
    "Phase2Stats",
    "PlumeSource",
    "Region",
    "RoutePlan",
    "Sample",
    "Strategy",
    "Vec2",
    "VrpInstance",
    "box_of",
    "build_lane_graph",
    "classify",
    "estimate_at",
    "estimate_grid",
    "ground_truth_labels",
    "heading_interval",
    "parse_config",
    "route_time",
    "run_experiment_csv",
    "run_mission",
    "score",
    "solve_exact",
    "solve_heuristic",
    "validate_plan",
]

from ._core import __version__
