"""Exact-arithmetic laboratory for nonexpansive operators on finite L1 spaces."""

from .dynamics import (
    DisplacementBelow,
    ExactRepeat,
    detect_cycle,
    displacement_profile,
    epsilon_fixed_point_search,
    iterate_orbit,
    rotation_period,
)
from .errors import ConfigurationError, DomainError, FixlabError, StructuralError
from .geometry import chebyshev_estimate, diameter, midpoint_probe
from .kernels import BACKEND
from .l1 import (
    FeasibleSetSpec,
    L1Function,
    MeasureSpace,
    circle_distance,
    convex_combination,
    l1_distance,
    l1_norm,
    validate_membership,
)
from .operators import (
    Averaging,
    BoxSampler,
    Clip,
    Composite,
    CondExp,
    GridQuantizer,
    GridSampler,
    Perturbation,
    Translation,
    build_operator,
    check_idempotent,
    check_nonexpansive,
    compose,
    max_deviation,
    perturbation_estimate,
)
from .scenarios import afpp_trial, load_scenario, paper_case, run_scenario, sweep

__version__ = "0.1.0"
