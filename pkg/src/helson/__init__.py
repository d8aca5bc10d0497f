"""Finite-depth construction of massive Helson sets on the torus and its certificates."""

from .construction import (
    ConstructionError,
    ConstructionParams,
    ConstructionResult,
    Cube,
    FrequencySelectionError,
    Level,
    ScheduledApproximant,
    SignPattern,
    compute_c,
    enumerate_sign_functions,
    place_children,
    run_construction,
    select_frequency,
    validate_params,
    verify_approximation,
)
from .gauge import GaugeFunction, c4_constant, divergence_check, parse_gauge, regularize_gauge
from .measures import (
    AtomicMeasure,
    FourierBox,
    anchor_check,
    fourier_coefficient,
    helson_ratio,
    natural_measure,
    sign_pattern_measure,
    sup_fourier_box,
    total_variation,
)

__version__ = "0.1.0"
