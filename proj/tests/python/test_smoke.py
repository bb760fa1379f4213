import math

import pytest

import optorouter as orr


def test_preset_constants():
    p = orr.derive_constants(orr.preset(orr.CaseTag.CaseII).raw)
    assert p.g0 == pytest.approx(33.4, rel=1e-2)
    assert p.omega_c == pytest.approx(1.787e15, rel=1e-3)


def test_steady_state_hits_target_coupling():
    p = orr.derive_constants(orr.preset().raw)
    eps = orr.pump_for_coupling(p, 0.1 * p.omega_m)
    s = orr.solve_steady(p, eps)
    assert s.G_eff == pytest.approx(0.1 * p.omega_m, rel=1e-8)
    assert s.residual <= 1e-10


def test_case2_routing_and_unitarity():
    preset = orr.preset(orr.CaseTag.CaseII)
    p = orr.derive_constants(preset.raw)
    reflect = orr.DriveParams(preset.drive.G, preset.drive.epsilon_d, p.omega_m)
    transmit = orr.DriveParams(preset.drive.G, preset.drive.epsilon_d, 0.8 * p.omega_m)
    assert orr.route_decision(p, reflect, p.Gamma_photon, p.n_th).decision == orr.Decision.Reflect
    assert orr.route_decision(p, transmit, p.Gamma_photon, p.n_th).decision == orr.Decision.Transmit

    d = orr.drift_matrix(p, transmit)
    assert d.entries.shape == (4, 4)
    assert orr.assess_stability(d).stable
    cols = orr.spectrum(d, -p.omega_m, p.omega_m, 101, p.Gamma_photon, p.n_th, workers=2)
    assert len(cols["nu"]) == 101
    assert cols["F4"] == cols["F5"]

    # Without optomechanical coupling nothing leaks into the mirror.
    bare = orr.drift_matrix(p, orr.DriveParams(0.0), orr.CaseTag.CaseI)
    cols = orr.spectrum(bare, -p.omega_m, p.omega_m, 101, p.Gamma_photon, p.n_th)
    assert max(abs(c + t - 1) for c, t in zip(cols["F1c"], cols["F1d"])) < 1e-10


def test_probe_oracle_matches_transfer_row():
    preset = orr.preset(orr.CaseTag.CaseII)
    p = orr.derive_constants(preset.raw)
    d = orr.drift_matrix(p, orr.DriveParams(preset.drive.G, preset.drive.epsilon_d, 0.8 * p.omega_m))
    nu = 0.3 * p.omega_m
    probe = orr.classical_probe_oracle(d, nu, orr.ProbePort.Optical)
    f1 = orr.transfer_row(d, nu).f[0]
    assert abs(probe - f1) <= 1e-4 * abs(f1)


def test_errors_map_to_python_exceptions():
    p = orr.derive_constants(orr.preset(orr.CaseTag.CaseI).raw)
    with pytest.raises(orr.UnstableSystem) as info:
        orr.route_decision(p, orr.DriveParams(0.6 * p.omega_m), 1.0, 1.0)
    assert isinstance(info.value, orr.NumericalError)
    assert isinstance(info.value, orr.Error)
    with pytest.raises(orr.ValidationError):
        orr.input_spectrum(0.0, 1.0)
    raw = orr.RawParams()
    with pytest.raises(orr.ValidationError):
        orr.derive_constants(raw)


def test_reproduce_fig3_labels():
    curves = orr.reproduce("fig3", workers=2)
    assert len(curves) == 2
    assert all(len(c["nu"]) > 2 for c in curves)
    assert all(math.isfinite(v) for c in curves for v in c["S_c_out"])
