import json
import math

import pytest

from irt_sim import closed_form_real_price
from irt_sim.engine import (
    STICKY_COLUMNS,
    BlockError,
    compare,
    load_artifacts,
    run,
    run_preset,
    table_to_csv,
)
from irt_sim.scenario import config_from_dict, parse_scenario, with_money_scale

SHOCKED = "horizon = 100\n[[shock]]\nperiod = 20\nsize = 0.1\n"


def test_csv_format():
    text = table_to_csv({"period": [0, 1], "x": [0.1 + 0.2, None], "y": [1 / 3, 2.0]})
    assert text == "period,x,y\n0,0.3,0.333333333333\n1,,2\n"


def test_sticky_csv_columns(tmp_path):
    art = run(parse_scenario(SHOCKED), tmp_path)
    header = (tmp_path / "sticky.csv").read_text().splitlines()[0]
    assert header == ",".join(STICKY_COLUMNS)
    assert header == "period,real_price,nominal_price,inflation,output_gap,real_output,policy_rate,premium,speed_q,money_supply"
    assert len(art.tables["sticky"]["period"]) == 100


def test_baseline_matches_closed_form(tmp_path):
    run(parse_scenario(SHOCKED), tmp_path)
    table = load_artifacts(tmp_path).tables["sticky"]
    for t in range(20, 100):
        expected = closed_form_real_price(1.0, 0.1, 0.6, 0.15, 0.0, t - 20)
        # CSV carries 12 significant digits
        assert table["real_price"][t] == pytest.approx(expected, rel=1e-11)
    in_memory = run(parse_scenario(SHOCKED)).tables["sticky"]["real_price"]
    for t in range(20, 100):
        assert in_memory[t] == pytest.approx(closed_form_real_price(1.0, 0.1, 0.6, 0.15, 0.0, t - 20), rel=1e-12)


def test_steady_inflation_column(tmp_path):
    art = run(parse_scenario("horizon = 50\nblocks = ['sticky', 'money']"), tmp_path)
    assert all(abs(v - 0.03) < 1e-12 for v in art.tables["sticky"]["inflation"][1:])
    money = art.tables["money"]["money_growth"][1:]
    assert all(abs(g - 0.03) < 1e-12 for g in money)


def test_manifest_records_resolved_configuration(tmp_path):
    run(parse_scenario(SHOCKED + "[policy]\nmode = 'reactive_figure3'\n"), tmp_path)
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    cfg = manifest["config"]
    assert cfg["calibration"] == {"pi_star": 0.03, "r_ss": 0.015, "b1": 1.0, "b2": 0.85, "a1": 0.15, "a2": 0.0, "j": 0.6}
    assert cfg["money"] == {"eta": 1.0, "xi": 0.5, "scale": 1.0}
    assert cfg["policy"] == {"mode": "reactive_figure3", "peak": 0.09, "step": 0.005}
    assert cfg["speed_mode"] == "paper_literal"
    assert manifest["derived"]["p_star"] == 1.0
    assert manifest["policy_path"][0] == [21, 0.09]
    assert config_from_dict(cfg) == parse_scenario(SHOCKED + "[policy]\nmode = 'reactive_figure3'\n")


def test_determinism(tmp_path):
    cfg = parse_scenario("blocks = ['sticky', 'money', 'horizon_forecast', 'nk']\n" + SHOCKED)
    run(cfg, tmp_path / "a")
    run(cfg, tmp_path / "b")
    for name in ("sticky.csv", "money.csv", "forecast.csv", "nk.csv", "manifest.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_all_blocks(tmp_path):
    from test_scenario import FULL

    art = run(parse_scenario(FULL), tmp_path, svg=True)
    assert set(art.tables) == {"sticky", "money", "forecast", "nk", "soe"}
    for name in ("sticky.csv", "money.csv", "forecast.csv", "nk.csv", "soe.csv", "sticky_inflation.svg"):
        assert (tmp_path / name).stat().st_size > 0
    nk = art.tables["nk"]
    assert nk["inflation"][1] > nk["inflation"][0]
    assert max(abs(v) for col in ("res_phillips", "res_is", "res_rule") for v in nk[col]) < 1e-12
    fc = art.tables["forecast"]
    assert fc["price"] == pytest.approx(art.tables["sticky"]["nominal_price"], rel=1e-12)


def test_block_errors_are_annotated():
    cfg = parse_scenario(
        "horizon = 10\nspeed_mode = 'figure_consistent'\n[policy]\nmode = 'explicit'\nexplicit = [{period = 4, rate = 0.0}]"
    )
    with pytest.raises(BlockError, match="sticky: period 4"):
        run(cfg)


def test_money_scaling_leaves_other_columns(tmp_path):
    cfg = parse_scenario("blocks = ['sticky', 'money']\n" + SHOCKED)
    a = run(cfg).tables["sticky"]
    b = run(with_money_scale(cfg, 4.0)).tables["sticky"]
    for col in STICKY_COLUMNS[:-1]:
        assert a[col] == b[col]
    assert [4.0 * m for m in a["money_supply"]] == b["money_supply"]


def test_compare_self_is_zero():
    art = run(parse_scenario(SHOCKED))
    comp = compare(art, art)
    assert set(comp.table["d_inflation"]) == {0.0}
    assert set(comp.table["d_output_gap"]) == {0.0}


def test_compare_rejects_mismatch():
    with pytest.raises(ValueError, match="horizon"):
        compare(run(parse_scenario("horizon = 50")), run(parse_scenario("horizon = 60")))
    with pytest.raises(ValueError, match="shock"):
        compare(run(parse_scenario("horizon = 100")), run(parse_scenario(SHOCKED)))


def test_compare_reactive_narrative():
    base = run(parse_scenario("speed_mode = 'figure_consistent'\n" + SHOCKED))
    alt = run(parse_scenario("speed_mode = 'figure_consistent'\n" + SHOCKED + "[policy]\nmode = 'reactive_figure3'\n"))
    comp = compare(base, alt)
    d = comp.table["d_inflation"]
    assert d[21] < -0.02
    assert any(v > 0 for v in d[22:])
    assert abs(comp.summary["terminal_d_output_gap"]) < 1e-3
    assert comp.summary["period_of_max_abs_d_inflation"] == 21
    s = comp.summary["settled_period"]
    assert all(abs(v) < 5e-4 for v in d[s:]) and abs(d[s - 1]) >= 5e-4


def test_preset_env_override(tmp_path, monkeypatch):
    seed = tmp_path / "seeds"
    seed.mkdir()
    (seed / "figure1.toml").write_text('charts = ["inflation"]\n[scenarios.only]\nhorizon = 5\n')
    monkeypatch.setenv("IRT_SIM_SEED_DIR", str(seed))
    res = run_preset("figure1", tmp_path / "out")
    assert list(res.runs) == ["only"]
    assert len(res.runs["only"].tables["sticky"]["period"]) == 5
