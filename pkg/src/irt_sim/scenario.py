"""Scenario documents (TOML): parsing, validation and serialization.

A document looks like::

    name = "baseline"
    horizon = 100
    speed_mode = "paper_literal"
    blocks = ["sticky", "money"]

    [calibration]
    pi_star = 0.03

    [[shock]]
    period = 20
    size = 0.1

    [policy]
    mode = "reactive_figure3"

Every key is optional except ``horizon``; anything not listed in the schema
is rejected.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, fields, replace
from typing import Any

import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .core import Calibration, CalibrationError, validate_calibration
from .money import MoneyDemandParams
from .nk import NKParams
from .soe import ExternalPath, SOEParams
from .sticky import PolicyPath, ShockSchedule, SpeedMode, reactive_policy

BLOCKS = ("sticky", "nk", "money", "soe", "horizon_forecast")
POLICY_MODES = ("constant", "explicit", "reactive_figure3")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PolicyConfig:
    mode: str = "constant"
    explicit: tuple[tuple[int, float], ...] = ()
    # reactive_figure3 only; start defaults to the period after the first shock
    start: int | None = None
    peak: float = 0.09
    step: float = 0.005

    def resolve(self, R_bar: float, shocks: ShockSchedule) -> PolicyPath:
        if self.mode == "constant":
            return PolicyPath()
        if self.mode == "explicit":
            return PolicyPath("explicit", self.explicit)
        start = self.start
        if start is None:
            if not shocks.events:
                raise ConfigError("policy.start is required for reactive_figure3 without shocks")
            start = shocks.events[0][0] + 1
        return reactive_policy(start, R_bar, self.peak, self.step)


@dataclass(frozen=True)
class NKConfig:
    gamma: float = 0.1
    alpha: float = 1.0
    mu: float = 1.5
    eps_pi: tuple[float, ...] = ()
    eps_x: tuple[float, ...] = ()

    def params(self, cal: Calibration) -> NKParams:
        return NKParams(
            theta=cal.r_ss, pi_star=cal.pi_star, gamma=self.gamma, alpha=self.alpha, mu=self.mu
        )


@dataclass(frozen=True)
class ForecastConfig:
    money_path: tuple[float, ...] | None = None
    demand_path: tuple[float, ...] | None = None


@dataclass(frozen=True)
class OutputConfig:
    dir: str | None = None
    svg: bool = False


@dataclass(frozen=True)
class ScenarioConfig:
    horizon: int
    name: str = "scenario"
    calibration: Calibration = field(default_factory=Calibration)
    shocks: ShockSchedule = field(default_factory=ShockSchedule)
    policy: PolicyConfig = field(default_factory=PolicyConfig)
    speed_mode: SpeedMode = SpeedMode.PAPER_LITERAL
    blocks: tuple[str, ...] = ("sticky",)
    money: MoneyDemandParams = field(default_factory=MoneyDemandParams)
    nk: NKConfig = field(default_factory=NKConfig)
    soe: SOEParams | None = None
    external: ExternalPath | None = None
    forecast: ForecastConfig = field(default_factory=ForecastConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    def policy_path(self) -> PolicyPath:
        R_bar = validate_calibration(self.calibration).R_bar
        return self.policy.resolve(R_bar, self.shocks)


# -- parsing -----------------------------------------------------------------

_EXTERNAL_KEYS = tuple(f.name for f in fields(ExternalPath))


def _check_keys(table: dict, allowed, where: str) -> None:
    for key in table:
        if key not in allowed:
            path = f"{where}.{key}" if where else key
            raise ConfigError(f"unknown key '{path}'")


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer, got {value!r}")
    return value


def _table(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{path}: expected a table")
    return value


def _series(value: Any, path: str) -> tuple[float, ...]:
    if not isinstance(value, list):
        raise ConfigError(f"{path}: expected a list of numbers")
    return tuple(_number(v, f"{path}[{i}]") for i, v in enumerate(value))


def _numbers(table: dict, keys, path: str) -> dict[str, float]:
    _check_keys(table, keys, path)
    return {k: _number(v, f"{path}.{k}") for k, v in table.items()}


def _parse_shocks(raw: Any) -> ShockSchedule:
    items = [raw] if isinstance(raw, dict) else raw
    if not isinstance(items, list):
        raise ConfigError("shock: expected a table or an array of tables")
    events = []
    for i, item in enumerate(items):
        path = f"shock[{i}]"
        item = _table(item, path)
        _check_keys(item, ("period", "size"), path)
        if "period" not in item or "size" not in item:
            raise ConfigError(f"{path}: both period and size are required")
        events.append((_integer(item["period"], f"{path}.period"), _number(item["size"], f"{path}.size")))
    try:
        return ShockSchedule(tuple(events))
    except ValueError as exc:
        raise ConfigError(f"shock: {exc}") from exc


def _parse_policy(raw: dict) -> PolicyConfig:
    raw = _table(raw, "policy")
    _check_keys(raw, ("mode", "explicit", "start", "peak", "step"), "policy")
    mode = raw.get("mode", "constant")
    if mode not in POLICY_MODES:
        raise ConfigError(f"policy.mode: expected one of {', '.join(POLICY_MODES)}, got {mode!r}")
    kwargs: dict[str, Any] = {"mode": mode}
    if "explicit" in raw:
        if mode != "explicit":
            raise ConfigError("policy.explicit is only valid with mode = 'explicit'")
        entries = raw["explicit"]
        if not isinstance(entries, list):
            raise ConfigError("policy.explicit: expected an array of {period, rate} tables")
        rates = []
        for i, entry in enumerate(entries):
            path = f"policy.explicit[{i}]"
            entry = _table(entry, path)
            _check_keys(entry, ("period", "rate"), path)
            if "period" not in entry or "rate" not in entry:
                raise ConfigError(f"{path}: both period and rate are required")
            rates.append((_integer(entry["period"], f"{path}.period"), _number(entry["rate"], f"{path}.rate")))
        kwargs["explicit"] = tuple(rates)
    for key in ("start", "peak", "step"):
        if key in raw:
            if mode != "reactive_figure3":
                raise ConfigError(f"policy.{key} is only valid with mode = 'reactive_figure3'")
            kwargs[key] = _integer(raw[key], "policy.start") if key == "start" else _number(raw[key], f"policy.{key}")
    return PolicyConfig(**kwargs)


def _parse_soe(raw: dict, horizon: int) -> tuple[SOEParams | None, ExternalPath | None]:
    raw = _table(raw, "soe")
    scalar = ("lambda", "gamma0", "gamma1")
    _check_keys(raw, scalar + _EXTERNAL_KEYS, "soe")
    missing = [k for k in scalar if k not in raw]
    if missing:
        raise ConfigError(f"soe: missing required keys {', '.join('soe.' + k for k in missing)}")
    try:
        params = SOEParams(
            lam=_number(raw["lambda"], "soe.lambda"),
            gamma0=_number(raw["gamma0"], "soe.gamma0"),
            gamma1=_number(raw["gamma1"], "soe.gamma1"),
        )
    except ValueError as exc:
        raise ConfigError(f"soe: {exc}") from exc
    series = {k: _series(raw[k], f"soe.{k}") for k in _EXTERNAL_KEYS if k in raw}
    if not series:
        return params, None
    for key in ("external_price", "external_inflation", "spread"):
        if key not in series:
            raise ConfigError(f"soe.{key} is required")
    if len(series["external_price"]) != horizon:
        raise ConfigError(
            f"soe.external_price: expected {horizon} entries (horizon), got {len(series['external_price'])}"
        )
    try:
        return params, ExternalPath(**series)
    except ValueError as exc:
        raise ConfigError(f"soe: {exc}") from exc


def config_from_dict(doc: dict) -> ScenarioConfig:
    top = (
        "name", "horizon", "calibration", "speed_mode", "shock", "policy",
        "blocks", "money", "nk", "soe", "forecast", "output",
    )
    _check_keys(doc, top, "")
    if "horizon" not in doc:
        raise ConfigError("horizon is required")
    horizon = _integer(doc["horizon"], "horizon")
    if horizon < 2:
        raise ConfigError(f"horizon: must be >= 2, got {horizon}")

    kw: dict[str, Any] = {"horizon": horizon}
    if "name" in doc:
        if not isinstance(doc["name"], str):
            raise ConfigError("name: expected a string")
        kw["name"] = doc["name"]

    cal_keys = tuple(f.name for f in fields(Calibration))
    cal = Calibration(**_numbers(_table(doc.get("calibration", {}), "calibration"), cal_keys, "calibration"))
    try:
        validate_calibration(cal)
    except CalibrationError as exc:
        raise ConfigError(f"calibration: {exc}") from exc
    kw["calibration"] = cal

    if "speed_mode" in doc:
        try:
            kw["speed_mode"] = SpeedMode(doc["speed_mode"])
        except ValueError:
            raise ConfigError(
                f"speed_mode: expected paper_literal or figure_consistent, got {doc['speed_mode']!r}"
            ) from None

    shocks = _parse_shocks(doc["shock"]) if "shock" in doc else ShockSchedule()
    kw["shocks"] = shocks
    for t, _ in shocks.events:
        if t >= horizon:
            raise ConfigError(f"shock.period: {t} is not below horizon {horizon}")

    policy = _parse_policy(doc["policy"]) if "policy" in doc else PolicyConfig()
    kw["policy"] = policy

    if "blocks" in doc:
        blocks = doc["blocks"]
        if not isinstance(blocks, list) or not blocks:
            raise ConfigError("blocks: expected a non-empty list")
        for b in blocks:
            if b not in BLOCKS:
                raise ConfigError(f"blocks: unknown block {b!r}")
        kw["blocks"] = tuple(b for b in BLOCKS if b in blocks)
    blocks = kw.get("blocks", ("sticky",))

    if "money" in doc:
        try:
            kw["money"] = MoneyDemandParams(
                **_numbers(_table(doc["money"], "money"), ("eta", "xi", "scale"), "money")
            )
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"money: {exc}") from exc

    if "nk" in doc:
        raw = _table(doc["nk"], "nk")
        _check_keys(raw, ("gamma", "alpha", "mu", "eps_pi", "eps_x"), "nk")
        nk_kw: dict[str, Any] = {}
        for k in ("gamma", "alpha", "mu"):
            if k in raw:
                nk_kw[k] = _number(raw[k], f"nk.{k}")
        for k in ("eps_pi", "eps_x"):
            if k in raw:
                nk_kw[k] = _series(raw[k], f"nk.{k}")
                if len(nk_kw[k]) > horizon:
                    raise ConfigError(f"nk.{k}: more entries than the horizon")
        kw["nk"] = NKConfig(**nk_kw)
        try:
            kw["nk"].params(cal)
        except ValueError as exc:
            raise ConfigError(f"nk: {exc}") from exc

    if "soe" in doc:
        kw["soe"], kw["external"] = _parse_soe(doc["soe"], horizon)

    if "forecast" in doc:
        raw = _table(doc["forecast"], "forecast")
        _check_keys(raw, ("money_path", "demand_path"), "forecast")
        kw["forecast"] = ForecastConfig(
            **{k: _series(v, f"forecast.{k}") for k, v in raw.items()}
        )

    if "output" in doc:
        raw = _table(doc["output"], "output")
        _check_keys(raw, ("dir", "svg"), "output")
        if "dir" in raw and not isinstance(raw["dir"], str):
            raise ConfigError("output.dir: expected a string")
        if "svg" in raw and not isinstance(raw["svg"], bool):
            raise ConfigError("output.svg: expected true or false")
        kw["output"] = OutputConfig(**raw)

    config = ScenarioConfig(**kw)
    _check_blocks(config)
    return config


def _check_blocks(cfg: ScenarioConfig) -> None:
    blocks = cfg.blocks
    if "money" in blocks and "sticky" not in blocks:
        raise ConfigError("blocks: money requires the sticky block")
    if "horizon_forecast" in blocks:
        fc = cfg.forecast
        given = (fc.money_path is not None, fc.demand_path is not None)
        if given == (False, False):
            if "money" not in blocks:
                raise ConfigError(
                    "horizon_forecast needs forecast.money_path and forecast.demand_path "
                    "or the money block"
                )
        elif given != (True, True):
            raise ConfigError("forecast.money_path and forecast.demand_path must be given together")
    if "soe" in blocks:
        if cfg.soe is None:
            raise ConfigError("soe block enabled but soe.{lambda,gamma0,gamma1} missing")
        if cfg.external is None:
            raise ConfigError("soe block enabled but the external series are missing")
    try:
        path = cfg.policy_path()
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"policy: {exc}") from exc
    if path.last_period >= cfg.horizon:
        raise ConfigError(f"policy: period {path.last_period} is not below horizon {cfg.horizon}")


def parse_scenario(text: str) -> ScenarioConfig:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"syntax error: {exc}") from exc
    return config_from_dict(doc)


# -- serialization -------------------------------------------------------------


def config_to_dict(cfg: ScenarioConfig) -> dict[str, Any]:
    """Fully resolved plain-data form of ``cfg``; every default is spelled out."""
    doc: dict[str, Any] = {
        "name": cfg.name,
        "horizon": cfg.horizon,
        "speed_mode": cfg.speed_mode.value,
        "blocks": list(cfg.blocks),
        "calibration": cfg.calibration.to_dict(),
        "shock": [{"period": t, "size": s} for t, s in cfg.shocks.events],
    }
    pol: dict[str, Any] = {"mode": cfg.policy.mode}
    if cfg.policy.mode == "explicit":
        pol["explicit"] = [{"period": t, "rate": r} for t, r in cfg.policy.explicit]
    elif cfg.policy.mode == "reactive_figure3":
        if cfg.policy.start is not None:
            pol["start"] = cfg.policy.start
        pol["peak"] = cfg.policy.peak
        pol["step"] = cfg.policy.step
    doc["policy"] = pol
    doc["money"] = {"eta": cfg.money.eta, "xi": cfg.money.xi, "scale": cfg.money.scale}
    nk = {"gamma": cfg.nk.gamma, "alpha": cfg.nk.alpha, "mu": cfg.nk.mu}
    if cfg.nk.eps_pi:
        nk["eps_pi"] = list(cfg.nk.eps_pi)
    if cfg.nk.eps_x:
        nk["eps_x"] = list(cfg.nk.eps_x)
    doc["nk"] = nk
    if cfg.soe is not None:
        soe: dict[str, Any] = {
            "lambda": cfg.soe.lam, "gamma0": cfg.soe.gamma0, "gamma1": cfg.soe.gamma1,
        }
        if cfg.external is not None:
            for key in _EXTERNAL_KEYS:
                value = getattr(cfg.external, key)
                if value is not None:
                    soe[key] = list(value)
        doc["soe"] = soe
    fc = {k: list(v) for k, v in vars(cfg.forecast).items() if v is not None}
    if fc:
        doc["forecast"] = fc
    out: dict[str, Any] = {"svg": cfg.output.svg}
    if cfg.output.dir is not None:
        out["dir"] = cfg.output.dir
    doc["output"] = out
    if not doc["shock"]:
        del doc["shock"]
    return doc


def serialize_scenario(cfg: ScenarioConfig) -> str:
    return tomli_w.dumps(config_to_dict(cfg))


def with_money_scale(cfg: ScenarioConfig, k: float) -> ScenarioConfig:
    """Copy of ``cfg`` with real money demand multiplied by ``k``."""
    return replace(cfg, money=replace(cfg.money, scale=cfg.money.scale * k))
