"""Deterministic simulator of inflation-and-interest-rate targeting."""

__version__ = "0.1.0"

from .core import (
    Calibration,
    CalibrationError,
    DerivedConstants,
    fisher_expected_inflation,
    fisher_policy_rate,
    steady_price_path,
    validate_calibration,
)
from .money import (
    HorizonForecast,
    MoneyDemandParams,
    endogenous_money_path,
    finite_horizon_forecast,
    money_demand,
)
from .nk import NKParams, NKState, nk_anchored_solve, nk_residuals, nk_steady_state
from .soe import (
    ExternalPath,
    SOEParams,
    exchange_rate,
    soe_inflation,
    soe_price_level,
    uip_expected_depreciation,
)
from .sticky import (
    PolicyPath,
    ShockSchedule,
    SimulationError,
    SimulationResult,
    SpeedMode,
    adjustment_speed,
    closed_form_real_price,
    equilibrium_real_price,
    nominal_price,
    observed_inflation,
    output_gap,
    premium,
    reactive_policy,
    real_price_step,
    simulate_sticky,
)
