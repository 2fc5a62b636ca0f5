"""Harmonic quantum Otto engine and refrigerator trade-off analysis.

A self-verifying library: every closed-form optimum, bound, and series
expansion it ships is paired with an independent numerical oracle, and the
command-line interface reproduces the figure-level claims as deterministic
CSV/JSON artifacts.
"""

from .cycle import (
    Adiabaticity,
    CycleEnergetics,
    Drive,
    Frequencies,
    OperationMode,
    Reservoirs,
    TempRegime,
    cop,
    coth_half,
    cycle_heats,
    efficiency,
    heats_and_work,
    mean_energies,
    operation_mode,
    sudden_switch_lambda,
)
from .dynamics import (
    FrequencyRamp,
    LambdaResult,
    RAMP_FACTORIES,
    exp_ramp,
    lambda_of_ramp,
    linear_ramp,
    quadratic_ramp,
    solve_auxiliary,
)
from .numerics import (
    Bracket,
    CubicRoots,
    OptimumResult,
    SeriesFit,
    find_root,
    fit_leading_series,
    maximize_1d,
    maximize_2d,
    solve_cubic_trig,
)
from .sampling import (
    Histogram,
    SampleSpec,
    sample_engine_efficiencies,
    sample_fridge_cops,
)

__version__ = "0.1.0"
