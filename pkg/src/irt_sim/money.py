"""Money demand, the endogenous money stock and finite-horizon forecasts."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .sticky import SimulationError, SimulationResult


@dataclass(frozen=True)
class MoneyDemandParams:
    """Log-linear real money demand ``scale * Y**eta * exp(-xi * R)``."""

    eta: float = 1.0
    xi: float = 0.5
    scale: float = 1.0

    def __post_init__(self):
        for name in ("eta", "xi", "scale"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


def money_demand(Y: float, R: float, params: MoneyDemandParams) -> float:
    if not Y > 0:
        raise ValueError(f"real output must be positive, got {Y}")
    return params.scale * Y**params.eta * math.exp(-params.xi * R)


def real_balance_path(result: SimulationResult, params: MoneyDemandParams) -> tuple[float, ...]:
    """Real balances demanded each period.

    Demand in period ``t`` depends on the rate of ``t+1``; the last period
    reuses its own rate.
    """
    rates = result.policy_rate
    n = len(result)
    out = []
    for t in range(n):
        R_next = rates[t + 1] if t + 1 < n else rates[t]
        try:
            out.append(money_demand(result.real_output[t], R_next, params))
        except ValueError as exc:
            raise SimulationError(str(exc), t) from exc
    return tuple(out)


def endogenous_money_path(result: SimulationResult, params: MoneyDemandParams) -> tuple[float, ...]:
    demand = real_balance_path(result, params)
    return tuple(P * L for P, L in zip(result.nominal_price, demand))


@dataclass(frozen=True)
class HorizonForecast:
    money_path: tuple[float, ...]
    demand_path: tuple[float, ...]
    price_path: tuple[float, ...]
    inflation_path: tuple[float, ...]


def finite_horizon_forecast(money_path, demand_path) -> HorizonForecast:
    """Prices anchored on an exogenous money path over a finite horizon.

    Every expected price is money over real balances for the same period,
    and expected inflation is the ratio of consecutive expected prices.
    """
    money = tuple(float(m) for m in money_path)
    demand = tuple(float(v) for v in demand_path)
    if len(money) != len(demand):
        raise ValueError(
            f"money_path and demand_path differ in length ({len(money)} vs {len(demand)})"
        )
    if len(money) < 2:
        raise ValueError("a forecast needs at least two periods")
    for k, (m, v) in enumerate(zip(money, demand)):
        if not (m > 0 and v > 0):
            raise ValueError(f"entry {k}: money and demand must be positive")
    prices = tuple(m / v for m, v in zip(money, demand))
    inflation = tuple(prices[k + 1] / prices[k] - 1.0 for k in range(len(prices) - 1))
    return HorizonForecast(money, demand, prices, inflation)
