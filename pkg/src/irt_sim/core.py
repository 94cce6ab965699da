"""Calibration, the Fisher relation and the target-consistent price path."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from decimal import Decimal


class CalibrationError(ValueError):
    """Raised when a calibration violates one or more invariants.

    ``problems`` holds one message per violated invariant.
    """

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class Calibration:
    """Structural parameters of the closed economy.

    Rates are decimals per period. Defaults reproduce the baseline table
    (target 3%, natural rate 1.5%, demand ``Y = 1 - 0.15 p``, supply 0.85).
    """

    pi_star: float = 0.03
    r_ss: float = 0.015
    b1: float = 1.0
    b2: float = 0.85
    a1: float = 0.15
    a2: float = 0.0
    j: float = 0.6

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class DerivedConstants:
    R_bar: float
    c1: float
    p_star: float


def _check_rate(name: str, value: float) -> None:
    if not value > -1.0:
        raise ValueError(f"{name} must be > -1, got {value!r}")


def fisher_policy_rate(r_ss: float, pi_star: float) -> float:
    """Nominal policy rate consistent with the target: ``(1+r)(1+pi) - 1``."""
    _check_rate("r_ss", r_ss)
    _check_rate("pi_star", pi_star)
    return (1.0 + r_ss) * (1.0 + pi_star) - 1.0


def fisher_expected_inflation(R_bar: float, r_ss: float) -> float:
    """Expected inflation implied by a policy rate under full credibility."""
    _check_rate("r_ss", r_ss)
    return (1.0 + R_bar) / (1.0 + r_ss) - 1.0


def steady_price_path(P0: float, pi_star: float, horizon: int) -> list[float]:
    """Price levels ``P0 (1+pi*)^t`` for ``t = 0..horizon``."""
    if not P0 > 0:
        raise ValueError(f"P0 must be positive, got {P0!r}")
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon!r}")
    _check_rate("pi_star", pi_star)
    growth = 1.0 + pi_star
    return [P0 * growth**t for t in range(horizon + 1)]


def _dec(x: float) -> Decimal:
    # shortest repr: 1 - 0.85 is 0.15, not 0.15000000000000002
    return Decimal(repr(float(x)))


def validate_calibration(cal: Calibration) -> DerivedConstants:
    """Check every invariant of ``cal`` and return the derived constants.

    All violations are collected before raising, so a single call reports
    every bad parameter.
    """
    problems = []
    if not cal.a1 > 0:
        problems.append(f"a1 must be positive (got {cal.a1})")
    if not cal.a2 >= 0:
        problems.append(f"a2 must be non-negative (got {cal.a2})")
    if not cal.a1 + cal.a2 > 0:
        problems.append("a1+a2 must be positive")
    if not cal.b1 - cal.b2 > 0:
        problems.append("b1 - b2 must be positive")
    if not cal.j > 0:
        problems.append(f"j must be positive (got {cal.j})")
    if not cal.pi_star > -1:
        problems.append(f"pi_star must be > -1 (got {cal.pi_star})")
    if not cal.r_ss > -1:
        problems.append(f"r_ss must be > -1 (got {cal.r_ss})")
    if problems:
        raise CalibrationError(problems)

    c1 = _dec(cal.b1) - _dec(cal.b2)
    slope = _dec(cal.a1) + _dec(cal.a2)
    return DerivedConstants(
        R_bar=fisher_policy_rate(cal.r_ss, cal.pi_star),
        c1=float(c1),
        p_star=float(c1 / slope),
    )
