"""Run scenarios, write CSV/SVG artifacts and compare runs."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import __version__
from .core import validate_calibration
from .money import endogenous_money_path, finite_horizon_forecast, real_balance_path
from .nk import nk_anchored_solve, nk_residuals
from .scenario import ConfigError, ScenarioConfig, config_from_dict, config_to_dict, tomllib
from .soe import SOEResult, simulate_soe
from .sticky import SimulationResult, simulate_sticky
from .svg import line_chart

STICKY_COLUMNS = SimulationResult.COLUMNS + ("money_supply",)
MONEY_COLUMNS = ("period", "nominal_price", "real_output", "rate_next", "real_balances", "money_supply", "money_growth")
FORECAST_COLUMNS = ("period", "money", "real_balances", "price", "inflation")
NK_COLUMNS = (
    "period", "eps_pi", "eps_x", "inflation", "output_gap", "policy_rate",
    "res_phillips", "res_is", "res_rule",
)
STICKY_CHARTS = ("nominal_price", "inflation", "output_gap", "policy_rate")
SETTLE_TOL = 5e-4

Table = dict  # column name -> list of values, insertion order is column order


class BlockError(RuntimeError):
    def __init__(self, block: str, exc: Exception):
        self.block = block
        super().__init__(f"{block}: {exc}")


def format_value(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, int):
        return str(v)
    return format(float(v), ".12g")


def table_to_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = list(table)
    writer.writerow(cols)
    for row in zip(*(table[c] for c in cols)):
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def _parse_cell(text: str) -> float | int | None:
    if text == "":
        return None
    try:
        return int(text)
    except ValueError:
        return float(text)


def read_csv_table(path: Path) -> Table:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    return {name: [_parse_cell(r[i]) for r in body] for i, name in enumerate(header)}


@dataclass
class RunArtifacts:
    name: str
    tables: dict[str, Table]
    manifest: dict[str, Any]
    out_dir: Path | None = None
    files: dict[str, Path] = field(default_factory=dict)
    sticky: SimulationResult | None = None


def _sticky_table(result: SimulationResult, money: tuple | None) -> Table:
    table = {c: list(result.column(c)) for c in SimulationResult.COLUMNS}
    table["money_supply"] = list(money) if money is not None else [None] * len(result)
    return table


def _nk_table(cfg: ScenarioConfig) -> Table:
    params = cfg.nk.params(cfg.calibration)
    table: Table = {c: [] for c in NK_COLUMNS}
    for t in range(cfg.horizon):
        e_pi = cfg.nk.eps_pi[t] if t < len(cfg.nk.eps_pi) else 0.0
        e_x = cfg.nk.eps_x[t] if t < len(cfg.nk.eps_x) else 0.0
        state = nk_anchored_solve(params, e_pi, e_x)
        res = nk_residuals(state, params.pi_star, 0.0, params, e_pi, e_x)
        for name, value in zip(NK_COLUMNS, (t, e_pi, e_x, *state, *res)):
            table[name].append(value)
    return table


def run(config: ScenarioConfig, out_dir: str | os.PathLike | None = None, svg: bool | None = None) -> RunArtifacts:
    """Execute the enabled blocks and, if an output directory is known, write
    one CSV per block plus ``manifest.json``.

    Blocks run in dependency order: sticky, money, horizon_forecast; nk and
    soe are independent.
    """
    cfg = config
    derived = validate_calibration(cfg.calibration)
    policy = cfg.policy_path()
    tables: dict[str, Table] = {}
    result = None
    money_path = demand = None

    if "sticky" in cfg.blocks:
        try:
            result = simulate_sticky(cfg.calibration, cfg.shocks, policy, cfg.speed_mode, cfg.horizon)
        except Exception as exc:
            raise BlockError("sticky", exc) from exc

    if "money" in cfg.blocks:
        try:
            demand = real_balance_path(result, cfg.money)
            money_path = endogenous_money_path(result, cfg.money)
        except Exception as exc:
            raise BlockError("money", exc) from exc
        rates = result.policy_rate
        tables["money"] = {
            "period": list(result.period),
            "nominal_price": list(result.nominal_price),
            "real_output": list(result.real_output),
            "rate_next": [rates[min(t + 1, len(rates) - 1)] for t in range(len(rates))],
            "real_balances": list(demand),
            "money_supply": list(money_path),
            "money_growth": [None] + [money_path[t] / money_path[t - 1] - 1.0 for t in range(1, len(money_path))],
        }

    if result is not None:
        tables = {"sticky": _sticky_table(result, money_path), **tables}

    if "horizon_forecast" in cfg.blocks:
        fc_money, fc_demand = cfg.forecast.money_path, cfg.forecast.demand_path
        if fc_money is None:
            fc_money, fc_demand = money_path, demand
        try:
            fc = finite_horizon_forecast(fc_money, fc_demand)
        except Exception as exc:
            raise BlockError("horizon_forecast", exc) from exc
        tables["forecast"] = {
            "period": list(range(len(fc.price_path))),
            "money": list(fc.money_path),
            "real_balances": list(fc.demand_path),
            "price": list(fc.price_path),
            "inflation": [None] + list(fc.inflation_path),
        }

    if "nk" in cfg.blocks:
        try:
            tables["nk"] = _nk_table(cfg)
        except Exception as exc:
            raise BlockError("nk", exc) from exc

    if "soe" in cfg.blocks:
        try:
            soe = simulate_soe(cfg.soe, cfg.external)
        except Exception as exc:
            raise BlockError("soe", exc) from exc
        tables["soe"] = {c: list(getattr(soe, c)) for c in SOEResult.COLUMNS}

    manifest: dict[str, Any] = {
        "name": cfg.name,
        "version": __version__,
        "config": config_to_dict(cfg),
        "derived": {"R_bar": derived.R_bar, "c1": derived.c1, "p_star": derived.p_star},
        "policy_path": [[t, r] for t, r in policy.explicit],
        "tables": {name: f"{name}.csv" for name in tables},
    }
    if "nk" in cfg.blocks:
        params = cfg.nk.params(cfg.calibration)
        manifest["derived"]["nk_beta"] = params.beta
        manifest["derived"]["nk_vartheta"] = params.vartheta

    artifacts = RunArtifacts(cfg.name, tables, manifest, sticky=result)
    target = out_dir if out_dir is not None else cfg.output.dir
    if target is not None:
        write_artifacts(artifacts, Path(target), cfg.output.svg if svg is None else svg)
    return artifacts


def write_artifacts(artifacts: RunArtifacts, out_dir: Path, svg: bool = False) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    artifacts.out_dir = out_dir
    for name, table in artifacts.tables.items():
        path = out_dir / f"{name}.csv"
        path.write_text(table_to_csv(table), newline="")
        artifacts.files[name] = path
    if svg:
        for name, path in _charts(artifacts, out_dir).items():
            artifacts.files[name] = path
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(artifacts.manifest, indent=2, sort_keys=True) + "\n")
    artifacts.files["manifest"] = manifest_path


def _charts(artifacts: RunArtifacts, out_dir: Path) -> dict[str, Path]:
    written = {}
    sticky = artifacts.tables.get("sticky")
    if sticky is not None:
        for col in STICKY_CHARTS:
            path = out_dir / f"sticky_{col}.svg"
            path.write_text(line_chart({artifacts.name: (sticky["period"], sticky[col])}, col, col))
            written[f"sticky_{col}_svg"] = path
    for block, col in (("forecast", "price"), ("soe", "inflation"), ("nk", "inflation")):
        table = artifacts.tables.get(block)
        if table is not None:
            path = out_dir / f"{block}_{col}.svg"
            path.write_text(line_chart({artifacts.name: (table["period"], table[col])}, f"{block} {col}", col))
            written[f"{block}_{col}_svg"] = path
    return written


def load_artifacts(directory: str | os.PathLike) -> RunArtifacts:
    directory = Path(directory)
    manifest = json.loads((directory / "manifest.json").read_text())
    tables = {name: read_csv_table(directory / fname) for name, fname in manifest["tables"].items()}
    return RunArtifacts(manifest["name"], tables, manifest, out_dir=directory)


# -- comparison -----------------------------------------------------------------


@dataclass
class Comparison:
    table: Table
    summary: dict[str, Any]


def compare(baseline: RunArtifacts, alternative: RunArtifacts) -> Comparison:
    """Per-period inflation and output-gap differences, alternative minus baseline.

    ``settled_period`` is the first period at or after the largest inflation
    difference from which ``|d_inflation|`` stays below 5e-4.
    """
    cb, ca = baseline.manifest["config"], alternative.manifest["config"]
    if cb["horizon"] != ca["horizon"]:
        raise ValueError(f"horizon mismatch: {cb['horizon']} vs {ca['horizon']}")
    if cb.get("shock", []) != ca.get("shock", []):
        raise ValueError("shock schedules differ")
    if "sticky" not in baseline.tables or "sticky" not in alternative.tables:
        raise ValueError("both runs need the sticky block")
    b, a = baseline.tables["sticky"], alternative.tables["sticky"]
    d_pi = [x - y for x, y in zip(a["inflation"], b["inflation"])]
    d_x = [x - y for x, y in zip(a["output_gap"], b["output_gap"])]
    table = {
        "period": list(b["period"]),
        "inflation_baseline": list(b["inflation"]),
        "inflation_alternative": list(a["inflation"]),
        "d_inflation": d_pi,
        "output_gap_baseline": list(b["output_gap"]),
        "output_gap_alternative": list(a["output_gap"]),
        "d_output_gap": d_x,
    }
    abs_pi = [abs(v) for v in d_pi]
    t_max = max(range(len(abs_pi)), key=abs_pi.__getitem__)
    settled = None
    for t in range(len(abs_pi) - 1, t_max - 1, -1):
        if abs_pi[t] >= SETTLE_TOL:
            break
        settled = t
    summary = {
        "max_abs_d_inflation": abs_pi[t_max],
        "period_of_max_abs_d_inflation": table["period"][t_max],
        "settled_period": table["period"][settled] if settled is not None else None,
        "max_abs_d_output_gap": max(abs(v) for v in d_x),
        "terminal_d_output_gap": d_x[-1],
    }
    return Comparison(table, summary)


def write_comparison(comp: Comparison, out_dir: str | os.PathLike, svg: bool = False,
                     labels: tuple[str, str] = ("baseline", "alternative")) -> dict[str, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = {"comparison": out_dir / "comparison.csv", "summary": out_dir / "comparison_summary.csv"}
    files["comparison"].write_text(table_to_csv(comp.table), newline="")
    summary_table = {"metric": list(comp.summary), "value": list(comp.summary.values())}
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(summary_table)
    for k, v in comp.summary.items():
        writer.writerow([k, format_value(v)])
    files["summary"].write_text(buf.getvalue(), newline="")
    if svg:
        t = comp.table["period"]
        for col in ("inflation", "output_gap"):
            path = out_dir / f"comparison_{col}.svg"
            series = {labels[0]: (t, comp.table[f"{col}_baseline"]), labels[1]: (t, comp.table[f"{col}_alternative"])}
            path.write_text(line_chart(series, col, col))
            files[f"{col}_svg"] = path
    return files


# -- presets ----------------------------------------------------------------------

PRESETS = ("figure1", "figure2", "figure3", "figure4")


def preset_dir() -> Path:
    override = os.environ.get("IRT_SIM_SEED_DIR")
    return Path(override) if override else Path(__file__).parent / "presets"


@dataclass
class PresetResult:
    name: str
    runs: dict[str, RunArtifacts]
    comparison: Comparison | None
    files: dict[str, Path]


def load_preset(name: str) -> dict[str, Any]:
    path = preset_dir() / f"{name}.toml"
    if not path.is_file():
        raise ConfigError(f"unknown preset {name!r} (looked for {path})")
    try:
        doc = tomllib.loads(path.read_text())
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: syntax error: {exc}") from exc
    for key in doc:
        if key not in ("title", "charts", "compare", "scenarios"):
            raise ConfigError(f"{path}: unknown key '{key}'")
    if not doc.get("scenarios"):
        raise ConfigError(f"{path}: no scenarios")
    return doc


def run_preset(name: str, out_dir: str | os.PathLike) -> PresetResult:
    """Run every scenario of a preset and draw its charts, one series per
    scenario, into ``out_dir``."""
    doc = load_preset(name)
    out_dir = Path(out_dir)
    runs: dict[str, RunArtifacts] = {}
    for key, scen in doc["scenarios"].items():
        scen = dict(scen)
        scen.setdefault("name", key)
        cfg = config_from_dict(scen)
        runs[key] = run(cfg, out_dir / key, svg=False)

    files: dict[str, Path] = {}
    title = doc.get("title", name)
    for col in doc.get("charts", ["inflation"]):
        series = {}
        for art in runs.values():
            sticky = art.tables["sticky"]
            series[art.name] = (sticky["period"], sticky[col])
        path = out_dir / f"{name}_{col}.svg"
        path.write_text(line_chart(series, f"{title}: {col}", col))
        files[f"{col}_svg"] = path

    comparison = None
    if "compare" in doc:
        base, alt = doc["compare"]
        comparison = compare(runs[base], runs[alt])
        files.update(write_comparison(comparison, out_dir / "comparison"))
    return PresetResult(name, runs, comparison, files)
