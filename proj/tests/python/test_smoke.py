"""Smoke tests for the python bindings: the main operations end to end."""

import math

import numpy as np
import pytest

import combwire as cw

R32 = 0.16 * math.log(10.0)  # variance ratio 10^-0.32, i.e. -3.2 dB


@pytest.fixture(scope="module")
def comb():
    return cw.CombSpec(n_min=-16, n_max=16)


@pytest.fixture(scope="module")
def pumps():
    return cw.PumpConfig(p_z=1, p_y=-1, r_z=R32, r_y=R32)


@pytest.fixture(scope="module")
def state(pumps, comb):
    return cw.build_comb_state(pumps, comb)


def test_wire_sequence(comb):
    wires = cw.extract_wires(cw.PumpConfig(1, -1, 0.1, 0.1), cw.CombSpec(n_min=-6, n_max=6))
    assert wires == [[-6, 5, -4, 3, -2, 1, 0, -1, 2, -3, 4, -5, 6]]

    graphs = cw.wire_graphs(cw.PumpConfig(3, -1, 0.1, 0.1), cw.CombSpec(n_min=-8, n_max=9))
    assert len(graphs) == 2
    assert graphs[0]["sequence"] == [-8, 7, -4, 3, 0, -1, 4, -5, 8]
    assert all(abs(w) == 0.5 for _, _, w in graphs[0]["edges"])


def test_raw_squeezing_level(state, pumps, comb):
    for n in (1, 2, 5):
        obs = cw.bs_nullifier(pumps, comb, cw.PumpCenter.Z, n, cw.QuadratureType.Q)
        assert cw.squeezing_db(state, obs) == pytest.approx(-3.2, abs=1e-9)


def test_wrong_frequency_antisqueezing(state, pumps, comb):
    obs = cw.wrong_frequency_combination(pumps, comb, -1, -2, cw.PumpCenter.Y, 0.0)
    ratio = state.variance(obs) / cw.vacuum_variance(obs)
    assert ratio == pytest.approx(math.cosh(2 * R32), abs=1e-9)
    with pytest.raises(cw.InvariantError):
        cw.wrong_frequency_combination(pumps, comb, 1, 0, cw.PumpCenter.Z, 0.0)


def test_covariance_matrix(state):
    cov = state.covariance()
    assert cov.shape == (2 * state.mode_count, 2 * state.mode_count)
    assert np.allclose(cov, cov.T, atol=1e-12)


def test_vlf_verdict(comb):
    pumps = cw.PumpConfig(1, -1, 0.40, 0.40)
    state = cw.build_comb_state(pumps, comb)
    wire = cw.extract_wires(pumps, comb)[0]
    report = cw.full_wire_inseparability(state, pumps, comb, wire)
    assert report["wire_inseparable"]
    assert cw.sufficient_condition(state, pumps, comb, wire)


def test_noise_correction_roundtrip():
    eta_exp = 10 ** -0.32
    dark = 10 ** -1.3
    corrected = cw.correct_electronic_noise(eta_exp, dark)
    assert 10 * math.log10(corrected) == pytest.approx(-3.444, abs=0.01)
    assert cw.contaminate(corrected, dark) == pytest.approx(eta_exp, abs=1e-14)


def test_phase_scan(state, pumps, comb):
    cfg = cw.BhdConfig()
    cfg.lo_center_pump = cw.PumpCenter.Y
    cfg.sideband_n = 1
    grid = [2 * math.pi * k / 32 for k in range(32)]
    trace = cw.phase_scan(state, cfg, pumps, comb, grid)
    dbs = [corrected for _, _, corrected in trace["points"]]
    assert min(dbs) == pytest.approx(-3.2, abs=1e-9)
    assert max(dbs) > 0.0


def test_imbalance_report():
    rep = cw.imbalance_report(cw.ImbalanceSpec(0.4, 0.01), cw.CombSpec(n_min=-6, n_max=6))
    assert rep["zy_correlation"] == pytest.approx(
        0.5 * math.sinh(0.8) * math.sinh(0.02), abs=1e-10
    )
    assert abs(rep["residual"]) < 1e-3
