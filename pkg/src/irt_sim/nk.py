"""Three-equation New Keynesian block under anchored expectations.

    pi = vartheta + beta E[pi] + gamma x + eps_pi
    x  = E[x] - alpha (R - E[pi] - theta) + eps_x
    R  = theta + pi* + mu (pi - pi*)

With ``E[pi] = pi*`` and ``E[x] = 0`` the system is linear in the current
state and solves in closed form each period. Forward-looking transition
dynamics are not modelled here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple


@dataclass(frozen=True)
class NKParams:
    theta: float = 0.015
    pi_star: float = 0.03
    gamma: float = 0.1
    alpha: float = 1.0
    mu: float = 1.5
    vartheta: float | None = None

    def __post_init__(self):
        if not 0 < self.theta < 1:
            raise ValueError(f"theta must lie in (0, 1), got {self.theta}")
        for name in ("gamma", "alpha", "mu"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        implied = (1.0 - self.beta) * self.pi_star
        if self.vartheta is None:
            object.__setattr__(self, "vartheta", implied)
        elif not math.isclose(self.vartheta, implied, rel_tol=1e-12, abs_tol=1e-15):
            raise ValueError(
                f"vartheta={self.vartheta} is inconsistent with the steady state; "
                f"it must equal (1-beta)*pi_star = {implied}"
            )

    @property
    def beta(self) -> float:
        return 1.0 / (1.0 + self.theta)


class NKState(NamedTuple):
    pi: float
    x: float
    R: float


def nk_steady_state(params: NKParams) -> NKState:
    return NKState(params.pi_star, 0.0, params.theta + params.pi_star)


def nk_residuals(
    state: NKState,
    expected_pi: float,
    expected_x: float,
    params: NKParams,
    eps_pi: float = 0.0,
    eps_x: float = 0.0,
) -> tuple[float, float, float]:
    pi, x, R = state
    p = params
    phillips = pi - p.vartheta - p.beta * expected_pi - p.gamma * x - eps_pi
    demand = x - expected_x + p.alpha * (R - expected_pi - p.theta) - eps_x
    rule = R - p.theta - p.pi_star - p.mu * (pi - p.pi_star)
    return phillips, demand, rule


def nk_anchored_solve(params: NKParams, eps_pi: float = 0.0, eps_x: float = 0.0) -> NKState:
    p = params
    denom = 1.0 + p.gamma * p.alpha * p.mu
    if denom == 0:
        raise ZeroDivisionError("1 + gamma*alpha*mu is zero; system is singular")
    gap = (p.gamma * eps_x + eps_pi) / denom
    x = -p.alpha * p.mu * gap + eps_x
    return NKState(p.pi_star + gap, x, p.theta + p.pi_star + p.mu * gap)
