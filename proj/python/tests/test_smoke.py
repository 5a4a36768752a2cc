"""Smoke tests for the python bindings."""

import math

import pytest

import risioi


def test_specfun_golden_values():
    sf = risioi.specfun
    assert sf.ln_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
    assert sf.upper_gamma_regularized(1.0, 2.0) == pytest.approx(math.exp(-2.0), rel=1e-12)
    assert sf.digamma(1.0) == pytest.approx(-0.5772156649015329, rel=1e-10)
    assert sf.exp_integral_gamma0(1.0) == pytest.approx(0.21938393439552029, rel=1e-10)
    assert sf.rician_mean_factor(0.0) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-12)
    assert sf.sinc(0.0) == 1.0
    assert sf.marcum_q1(0.0, 1.0) == pytest.approx(math.exp(-0.5), rel=1e-12)
    with pytest.raises(ValueError):
        sf.ln_gamma(-1.0)


def test_presets_and_moments():
    names = risioi.preset_names()
    assert "fig3-N400" in names
    s = risioi.preset_scenario("fig3-N400")
    assert s.n == 400
    assert s.m_total == 10000
    m = risioi.derive_moments(s)
    assert m.gamma_bar == pytest.approx(4.0 * m.sigma2, rel=1e-15)
    assert m.m_n > 0
    # circular split narrows the real-part variance
    mc = risioi.derive_moments(s, y_split="circular")
    assert mc.sigma2 < m.sigma2
    # quantizer moments: perfect vs 3 bits
    assert risioi.quantizer_moments(None) == (1.0, 1.0)
    th1, th2 = risioi.quantizer_moments(3)
    assert th1 == pytest.approx(0.9744953584044326, rel=1e-12)
    assert th2 == pytest.approx(0.9003163161571061, rel=1e-12)


def test_analytic_consistency():
    s = risioi.preset_scenario("fig2-case2-N16")
    m = risioi.derive_moments(s)
    assert risioi.snr_cdf(0.0, 10.0, m) == 0.0
    p_out = risioi.outage_probability(1e-4, 10.0, m)
    assert 0.0 <= p_out <= 1.0
    se = risioi.spectral_efficiency(10.0, m)
    assert se > 0.0
    assert risioi.spectral_efficiency(100.0, m) > se
    nr = risioi.no_ris_spectral_efficiency(10.0, 64 * 30.0**-4.6, 100.0**-3.1)
    assert nr["reduced"] > 0.0
    assert nr["rel_deviation"] >= 0.0


def test_monte_carlo_determinism():
    s = risioi.preset_scenario("fig2-case2-N16")
    a = risioi.estimate_spectral_efficiency(s, 10.0, seed=3, trials=5000, threads=1)
    b = risioi.estimate_spectral_efficiency(s, 10.0, seed=3, trials=5000, threads=2)
    assert a.value == b.value
    assert a.std_error == b.std_error
    c = risioi.estimate_outage(s, 10.0, 0.0, seed=3, trials=5000)
    assert c.value == 0.0
    grid, values = risioi.empirical_cdf(s, 10.0, [0.0, 1e-4, 1.0], seed=3, trials=5000)
    assert values == sorted(values)


def test_config_error_maps_to_python_exception():
    with pytest.raises(risioi.ConfigError):
        risioi.Scenario.from_json('{"direct": {"distance_m": -1, "pathloss_exponent": 2}}')


def test_run_sweep_csv():
    cfg = '{"preset": "fig2-case2-N16", "run": {"seed": 1, "trials": 2000, "chunks": 8}}'
    csv = risioi.run_sweep_csv(cfg, threads=2)
    lines = csv.strip().splitlines()
    assert lines[0].startswith("scenario_id,p_db,")
    assert len(lines) > 7
    # deterministic
    assert risioi.run_sweep_csv(cfg, threads=1) == csv
