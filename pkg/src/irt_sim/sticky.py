"""Sticky-price adjustment with a policy premium on the adjustment speed.

The real price ``p`` follows ``dp/dt = q (b1 - a1 p - b2 - a2 p)``. Within a
period the speed ``q`` is held fixed, so each step is the exact solution of
the linear ODE and a constant-speed run coincides with the closed form
``p* + s exp(-q (a1+a2) tau)``.

Timing: the rate in force during period ``t`` sets the speed of the
adjustment that ends at ``p_t``; a shock scheduled for ``t`` then moves the
price instantaneously. Nominal prices use the cumulative deflator
``P_t = p_t (1+pi*)^t`` and inflation is reported backward,
``pi_t = P_t / P_{t-1} - 1``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum

from .core import Calibration, validate_calibration

#: deviation of observed from target inflation beyond which the fixed
#: parameters a1, q are no longer trusted
REGIME_WARNING_GAP = 0.25


class SimulationError(RuntimeError):
    def __init__(self, message: str, period: int | None = None):
        self.period = period
        if period is not None:
            message = f"period {period}: {message}"
        super().__init__(message)


class RegimeWarning(RuntimeWarning):
    """Inflation left the narrow range the calibration is valid for."""


class SpeedMode(str, Enum):
    PAPER_LITERAL = "paper_literal"
    FIGURE_CONSISTENT = "figure_consistent"


@dataclass(frozen=True)
class ShockSchedule:
    """One-time price shocks as ``(period, size)`` with size a fraction of p*."""

    events: tuple[tuple[int, float], ...] = ()

    def __post_init__(self):
        events = tuple((int(t), float(s)) for t, s in self.events)
        object.__setattr__(self, "events", events)
        last = -1
        for t, s in events:
            if t < 0:
                raise ValueError(f"shock period must be non-negative, got {t}")
            if t <= last:
                raise ValueError("shock periods must be strictly increasing")
            if not s > -1:
                raise ValueError(f"shock size must be > -1, got {s}")
            last = t

    def as_dict(self) -> dict[int, float]:
        return dict(self.events)


@dataclass(frozen=True)
class PolicyPath:
    """Policy rate per period; periods not listed stay at the steady rate."""

    mode: str = "constant"
    explicit: tuple[tuple[int, float], ...] = field(default=())

    def __post_init__(self):
        if self.mode not in ("constant", "explicit"):
            raise ValueError(f"unknown policy mode {self.mode!r}")
        explicit = tuple((int(t), float(r)) for t, r in self.explicit)
        object.__setattr__(self, "explicit", explicit)
        if self.mode == "constant" and explicit:
            raise ValueError("constant policy takes no explicit rates")
        last = -1
        for t, r in explicit:
            if t <= last:
                raise ValueError("policy periods must be strictly increasing")
            if not r > -1:
                raise ValueError(f"policy rate must be > -1, got {r}")
            last = t
        object.__setattr__(self, "_rates", dict(explicit))

    def rate_at(self, t: int, R_bar: float) -> float:
        return self._rates.get(t, R_bar)

    @property
    def last_period(self) -> int:
        return self.explicit[-1][0] if self.explicit else -1


def reactive_policy(
    start: int, R_bar: float, peak: float = 0.09, step: float = 0.005
) -> PolicyPath:
    """Restrictive response: ``peak`` at ``start``, lowered by ``step`` each
    period; from the first period the cut would take it below ``R_bar`` the
    path falls back to the steady rate."""
    if step <= 0:
        raise ValueError("step must be positive")
    if peak < R_bar:
        raise ValueError("peak must not be below the steady policy rate")
    rates = []
    k = 0
    # exact integer count avoids 0.09 - 8*0.005 landing a hair off 0.05
    while peak - k * step >= R_bar - 1e-15:
        rates.append((start + k, round(peak - k * step, 15)))
        k += 1
    return PolicyPath("explicit", tuple(rates))


@dataclass(frozen=True)
class SimulationResult:
    period: tuple[int, ...]
    real_price: tuple[float, ...]
    nominal_price: tuple[float, ...]
    inflation: tuple[float, ...]
    output_gap: tuple[float, ...]
    real_output: tuple[float, ...]
    policy_rate: tuple[float, ...]
    premium: tuple[float, ...]
    speed_q: tuple[float, ...]

    COLUMNS = (
        "period",
        "real_price",
        "nominal_price",
        "inflation",
        "output_gap",
        "real_output",
        "policy_rate",
        "premium",
        "speed_q",
    )

    def __len__(self) -> int:
        return len(self.period)

    def column(self, name: str) -> tuple:
        return getattr(self, name)


def equilibrium_real_price(cal: Calibration) -> float:
    return validate_calibration(cal).p_star


def premium(R_t: float, R_bar: float) -> float:
    if not R_t > -1:
        raise ValueError(f"policy rate must be > -1, got {R_t}")
    rho = 1.0 + R_t - R_bar
    if not rho > 0:
        raise ValueError(f"premium must be positive, got {rho}")
    return rho


def adjustment_speed(
    j: float, rho: float, R_t: float, R_bar: float, mode: SpeedMode | str
) -> float:
    """Speed of price adjustment given the policy premium.

    ``paper_literal`` divides the gain by the premium factor. In
    ``figure_consistent`` the rate gap in percentage points scales the gain
    up, ``j (1 + 100 (R_t - R_bar))``, so a restrictive rate speeds the
    return to equilibrium.
    """
    mode = SpeedMode(mode)
    if mode is SpeedMode.PAPER_LITERAL:
        if not rho > 0:
            raise ValueError(f"premium must be positive, got {rho}")
        q = j / rho
    else:
        q = j * (1.0 + 100.0 * (R_t - R_bar))
    if not q > 0:
        raise ValueError("speed must be positive")
    return q


def real_price_step(p_t: float, p_star: float, q_t: float, a1: float, a2: float = 0.0) -> float:
    if not q_t > 0:
        raise ValueError("speed must be positive")
    return p_star + (p_t - p_star) * math.exp(-q_t * (a1 + a2))


def closed_form_real_price(
    p_star: float, s: float, q: float, a1: float, a2: float, tau: float
) -> float:
    if not q > 0:
        raise ValueError("speed must be positive")
    if tau < 0:
        raise ValueError("tau must be non-negative")
    return p_star + s * math.exp(-q * (a1 + a2) * tau)


def nominal_price(p_t: float, pi_star: float, t: int) -> float:
    if not p_t > 0:
        raise ValueError(f"real price must be positive, got {p_t}")
    return p_t * (1.0 + pi_star) ** t


def output_gap(p_t: float, cal: Calibration) -> float:
    # c1 - (a1+a2) p written around p* so the gap is exactly 0 at equilibrium
    p_star = validate_calibration(cal).p_star
    return (cal.a1 + cal.a2) * (p_star - p_t)


def observed_inflation(P_t: float, P_prev: float) -> float:
    if not (P_t > 0 and P_prev > 0):
        raise ValueError("price levels must be positive")
    return P_t / P_prev - 1.0


def simulate_sticky(
    cal: Calibration,
    shocks: ShockSchedule,
    policy: PolicyPath,
    mode: SpeedMode | str,
    horizon: int,
) -> SimulationResult:
    """Simulate ``horizon`` periods starting from the steady state.

    Before period 0 the economy sits at ``p*`` with prices growing at the
    target, so without shocks and with the policy rate at ``R_bar`` every
    series stays on the steady path.
    """
    mode = SpeedMode(mode)
    derived = validate_calibration(cal)
    p_star, R_bar = derived.p_star, derived.R_bar
    slope = cal.a1 + cal.a2

    last_event = max([t for t, _ in shocks.events] + [policy.last_period, -1])
    if horizon < 1 or last_event >= horizon:
        raise SimulationError(
            f"horizon {horizon} must exceed every scheduled period (last {last_event})"
        )

    sizes = shocks.as_dict()
    cols: dict[str, list] = {name: [] for name in SimulationResult.COLUMNS}
    p = p_star
    P_prev = p_star / (1.0 + cal.pi_star)
    for t in range(horizon):
        try:
            R = policy.rate_at(t, R_bar)
            rho = premium(R, R_bar)
            q = adjustment_speed(cal.j, rho, R, R_bar, mode)
            p = real_price_step(p, p_star, q, cal.a1, cal.a2)
            if t in sizes:
                p += sizes[t] * p_star
            P = nominal_price(p, cal.pi_star, t)
            pi_t = observed_inflation(P, P_prev)
        except ValueError as exc:
            raise SimulationError(str(exc), t) from exc

        if abs(pi_t - cal.pi_star) > REGIME_WARNING_GAP:
            warnings.warn(
                f"period {t}: inflation {pi_t:.4g} is more than "
                f"{REGIME_WARNING_GAP} away from the target",
                RegimeWarning,
                stacklevel=2,
            )

        cols["period"].append(t)
        cols["real_price"].append(p)
        cols["nominal_price"].append(P)
        cols["inflation"].append(pi_t)
        cols["output_gap"].append(slope * (p_star - p))
        cols["real_output"].append(cal.b1 - cal.a1 * p)
        cols["policy_rate"].append(R)
        cols["premium"].append(rho)
        cols["speed_q"].append(q)
        P_prev = P

    return SimulationResult(**{k: tuple(v) for k, v in cols.items()})
