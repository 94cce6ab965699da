import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from irt_sim import (
    ExternalPath,
    SOEParams,
    exchange_rate,
    soe_inflation,
    soe_price_level,
    uip_expected_depreciation,
)
from irt_sim.soe import simulate_soe

PARAMS = SOEParams(lam=0.001, gamma0=4000, gamma1=-0.8)


def test_exchange_rate():
    assert exchange_rate(PARAMS, 0) == 4000
    assert exchange_rate(PARAMS, 0.01) == pytest.approx(4000 * math.exp(-0.008), rel=1e-15)
    assert round(exchange_rate(PARAMS, 0.01), 2) == 3968.13
    assert round(exchange_rate(PARAMS, -0.01), 2) == 4032.13


def test_price_level():
    assert soe_price_level(SOEParams(1, 4000, -0.8), 1, 0) == 4000
    assert soe_price_level(PARAMS, 2, 0) == pytest.approx(8, rel=1e-15)
    assert soe_price_level(PARAMS, 4, 0.03) == pytest.approx(2 * soe_price_level(PARAMS, 2, 0.03), rel=1e-15)
    with pytest.raises(ValueError):
        soe_price_level(PARAMS, 0, 0)


def test_inflation():
    assert soe_inflation(0.02, 0.05, -0.8, 0) == 0.02 + 0.05
    assert soe_inflation(0.02, 0.05, -0.8, 0.01) == pytest.approx(0.062, abs=1e-15)
    assert soe_inflation(0.02, 0.05, -0.8, 0.0875) == pytest.approx(0.0, abs=1e-15)


def test_uip():
    assert uip_expected_depreciation(0.05, 0.05) == 0
    assert uip_expected_depreciation(0.04545, 0.02) == pytest.approx(math.log(1.04545 / 1.02), rel=1e-12)
    assert round(uip_expected_depreciation(0.04545, 0.02), 6) == 0.024645
    assert uip_expected_depreciation(0.02, 0.04545) == -uip_expected_depreciation(0.04545, 0.02)
    with pytest.raises(ValueError):
        uip_expected_depreciation(-1, 0.02)


@pytest.mark.parametrize("kw", [{"lam": 0}, {"gamma0": -1}, {"gamma1": 0}, {"gamma1": 0.3}])
def test_param_signs(kw):
    base = {"lam": 1.0, "gamma0": 1.0, "gamma1": -0.5}
    with pytest.raises(ValueError):
        SOEParams(**{**base, **kw})


@given(st.floats(-0.5, 0.5), st.floats(-0.5, 0.5))
def test_monotone_in_surprise(u1, u2):
    if abs(u1 - u2) < 1e-9:
        return
    lo, hi = sorted((u1, u2))
    assert exchange_rate(PARAMS, lo) > exchange_rate(PARAMS, hi)
    assert soe_inflation(0.02, 0.03, -0.8, lo) > soe_inflation(0.02, 0.03, -0.8, hi)


@given(st.floats(-0.2, 0.2), st.floats(-0.2, 0.2), st.floats(0, 0.1))
def test_uip_antisymmetry(a, b, eps):
    assert uip_expected_depreciation(a, b) == -uip_expected_depreciation(b, a)
    assert uip_expected_depreciation(a, b, eps) == pytest.approx(uip_expected_depreciation(a, b) + eps, abs=1e-15)


@given(
    st.floats(0.5, 2), st.floats(0.5, 2), st.floats(100, 5000), st.floats(100, 5000),
    st.floats(-0.1, 0.1), st.floats(-0.1, 0.1),
)
def test_log_price_decomposition(p1, p2, g1, g2, u1, u2):
    a = soe_price_level(SOEParams(0.01, g1, -0.8), p1, u1)
    b = soe_price_level(SOEParams(0.01, g2, -0.8), p2, u2)
    decomposition = math.log(p2 / p1) + math.log(g2 / g1) - 0.8 * (u2 - u1)
    assert math.log(b) - math.log(a) == pytest.approx(decomposition, abs=1e-12)


def test_external_path_requires_depreciation_source():
    with pytest.raises(ValueError):
        ExternalPath((1.0, 1.0), (0.02, 0.02), (0.0, 0.0))
    with pytest.raises(ValueError, match="entries"):
        ExternalPath((1.0, 1.0), (0.02,), (0.0, 0.0), expected_depreciation=(0.0, 0.0))


def test_simulate_soe_with_uip():
    path = ExternalPath(
        external_price=(1.0, 1.02, 1.0404),
        external_inflation=(0.02, 0.02, 0.02),
        spread=(0.0, 0.01, 0.01),
        expected_rate=(0.05, 0.05, 0.05),
        expected_external_rate=(0.02, 0.02, 0.02),
    )
    res = simulate_soe(PARAMS, path)
    dep = math.log(1.05 / 1.02)
    assert res.expected_depreciation == pytest.approx([dep] * 3, rel=1e-12)
    assert res.d_spread == pytest.approx((0.0, 0.01, 0.0), abs=1e-15)
    assert res.inflation[1] == pytest.approx(0.02 + dep - 0.008, abs=1e-15)
    assert res.inflation[2] == pytest.approx(0.02 + dep, abs=1e-15)
    assert res.log_price_change[1] == pytest.approx(math.log(1.02) - 0.008, abs=1e-12)


def test_direct_depreciation_wins_with_warning():
    path = ExternalPath(
        external_price=(1.0, 1.0),
        external_inflation=(0.0, 0.0),
        spread=(0.0, 0.0),
        expected_depreciation=(0.01, 0.01),
        expected_rate=(0.05, 0.05),
        expected_external_rate=(0.02, 0.02),
    )
    with pytest.warns(UserWarning, match="expected_depreciation"):
        res = simulate_soe(PARAMS, path)
    assert res.inflation == (0.01, 0.01)
