"""Small open economy: price level, exchange rate, inflation and UIP.

The domestic price level is ``lambda * P_ext * T`` with the nominal exchange
rate ``T = gamma0 * exp(gamma1 * u)``, where ``u`` is the unanticipated part
of the domestic-foreign policy rate spread. Inflation decomposes into
external inflation, expected depreciation and ``gamma1`` times the change in
``u``; the change is taken as a first difference per period.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass


@dataclass(frozen=True)
class SOEParams:
    lam: float
    gamma0: float
    gamma1: float

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if not self.gamma0 > 0:
            raise ValueError(f"gamma0 must be positive, got {self.gamma0}")
        if not self.gamma1 < 0:
            raise ValueError(f"gamma1 must be negative, got {self.gamma1}")


@dataclass(frozen=True)
class ExternalPath:
    """Per-period external series.

    Expected depreciation is either given directly or derived from expected
    domestic and foreign rates through UIP.
    """

    external_price: tuple[float, ...]
    external_inflation: tuple[float, ...]
    spread: tuple[float, ...]
    expected_depreciation: tuple[float, ...] | None = None
    expected_rate: tuple[float, ...] | None = None
    expected_external_rate: tuple[float, ...] | None = None
    uip_residual: tuple[float, ...] | None = None

    def __post_init__(self):
        n = len(self.external_price)
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            if value is None:
                continue
            value = tuple(float(v) for v in value)
            object.__setattr__(self, name, value)
            if len(value) != n:
                raise ValueError(f"{name} has {len(value)} entries, expected {n}")
        for t, p in enumerate(self.external_price):
            if not p > 0:
                raise ValueError(f"period {t}: external price must be positive")
        has_uip = self.expected_rate is not None and self.expected_external_rate is not None
        if self.expected_depreciation is None and not has_uip:
            raise ValueError(
                "expected_depreciation or both expected_rate and expected_external_rate are required"
            )

    def __len__(self) -> int:
        return len(self.external_price)

    def depreciation_series(self) -> tuple[float, ...]:
        has_uip = self.expected_rate is not None and self.expected_external_rate is not None
        if self.expected_depreciation is not None:
            if has_uip:
                warnings.warn(
                    "both expected_depreciation and UIP inputs given; using expected_depreciation",
                    UserWarning,
                    stacklevel=2,
                )
            return self.expected_depreciation
        eps = self.uip_residual or (0.0,) * len(self)
        return tuple(
            uip_expected_depreciation(r, r_ext, e)
            for r, r_ext, e in zip(self.expected_rate, self.expected_external_rate, eps)
        )


def exchange_rate(params: SOEParams, u: float) -> float:
    return params.gamma0 * math.exp(params.gamma1 * u)


def soe_price_level(params: SOEParams, p_ext: float, u: float) -> float:
    if not p_ext > 0:
        raise ValueError(f"external price must be positive, got {p_ext}")
    return params.lam * p_ext * exchange_rate(params, u)


def soe_inflation(pi_ext: float, gamma0_hat: float, gamma1: float, du: float) -> float:
    return pi_ext + gamma0_hat + gamma1 * du


def uip_expected_depreciation(expected_R: float, expected_R_ext: float, eps: float = 0.0) -> float:
    if not (expected_R > -1 and expected_R_ext > -1):
        raise ValueError("interest rates must be > -1")
    return math.log1p(expected_R) - math.log1p(expected_R_ext) + eps


@dataclass(frozen=True)
class SOEResult:
    period: tuple[int, ...]
    external_price: tuple[float, ...]
    spread: tuple[float, ...]
    d_spread: tuple[float, ...]
    exchange_rate: tuple[float, ...]
    price_level: tuple[float, ...]
    log_price_change: tuple[float, ...]
    external_inflation: tuple[float, ...]
    expected_depreciation: tuple[float, ...]
    inflation: tuple[float, ...]

    COLUMNS = (
        "period",
        "external_price",
        "spread",
        "d_spread",
        "exchange_rate",
        "price_level",
        "log_price_change",
        "external_inflation",
        "expected_depreciation",
        "inflation",
    )


def simulate_soe(params: SOEParams, path: ExternalPath) -> SOEResult:
    """Evaluate the open-economy block period by period.

    The spread surprise is taken to be zero before period 0, so the first
    ``d_spread`` equals the first surprise and the first log price change is
    measured against a pre-sample level with the same external price.
    """
    gamma_hat = path.depreciation_series()
    cols: dict[str, list] = {name: [] for name in SOEResult.COLUMNS}
    u_prev = 0.0
    prev_level = None
    for t in range(len(path)):
        u = path.spread[t]
        level = soe_price_level(params, path.external_price[t], u)
        if prev_level is None:
            prev_level = soe_price_level(params, path.external_price[t], 0.0)
        du = u - u_prev
        cols["period"].append(t)
        cols["external_price"].append(path.external_price[t])
        cols["spread"].append(u)
        cols["d_spread"].append(du)
        cols["exchange_rate"].append(exchange_rate(params, u))
        cols["price_level"].append(level)
        cols["log_price_change"].append(math.log(level) - math.log(prev_level))
        cols["external_inflation"].append(path.external_inflation[t])
        cols["expected_depreciation"].append(gamma_hat[t])
        cols["inflation"].append(
            soe_inflation(path.external_inflation[t], gamma_hat[t], params.gamma1, du)
        )
        u_prev, prev_level = u, level
    return SOEResult(**{k: tuple(v) for k, v in cols.items()})
