import math

import pytest

import muflux as m


def test_geometry_and_atmosphere():
    tel = m.scintillator_telescope()
    assert math.degrees(tel.alpha) == pytest.approx(172.12554967035183, rel=1e-12)
    assert m.path_length(0.0) == 10.0
    assert m.path_length(math.pi / 2) == pytest.approx(math.sqrt(100 + 2 * 10 * 6400), rel=1e-12)
    assert m.effective_area(tel, 0.0, 0.0) == pytest.approx(24.7 * 2.7)


def test_chip_tilt_factor():
    chip = m.chip_as_detector(m.silicon_chip())
    sweep = m.angular_sweep(chip, [0.0, math.pi / 2])
    assert sweep[0].rate / sweep[1].rate == pytest.approx(1.6, abs=0.1)


def test_monte_carlo_agrees_with_quadrature():
    chip = m.chip_as_detector(m.silicon_chip())
    quad = m.total_rate(chip, 0.5)
    mc = m.mc_rate(chip, 0.5, n_samples=200_000, seed=3)
    assert abs(mc.rate - quad.rate) < 3 * mc.numerical_error


def test_counting():
    na = m.accidental_rate(m.RateValue(701.57, 0.78), m.RateValue(701.57, 0.78))
    assert round(na.rate, 2) == 0.33 and round(na.sigma, 2) == 0.03
    r = m.rate_from_counts(48000, 1200)
    assert (round(r.rate, 2), round(r.sigma, 2)) == (40.0, 0.18)
    with pytest.raises(ValueError):
        m.rate_from_counts(1, 0.0)


def test_fit_round_trip():
    tel = m.scintillator_telescope()
    angles = [math.radians(d) for d in range(0, 91, 15)]
    unit = [p.rate for p in m.angular_sweep(tel, angles, m.AtmosphereModel(vertical_intensity=1.0))]
    fit = m.fit_intensity(tel, angles, [0.42 * u for u in unit], [0.1] * len(unit))
    assert fit.i0 == pytest.approx(0.42, rel=1e-10)
    with pytest.raises(m.FitError):
        m.fit_intensity(tel, [0.0], [1.0], [0.1], flagged=[True])


def test_depth_report():
    sites = [
        m.SiteMeasurement("TMB", 100, m.RateValue(1.4, 0.03)),
        m.SiteMeasurement("surface", 0, m.RateValue(40.0, 0.12)),
    ]
    report = m.depth_report(sites)
    assert report.reference == "surface"
    assert round(report.sites[1].screening.factor, 1) == 28.6
    with pytest.raises(m.ConfigError):
        m.depth_report(sites[:1])
    assert m.chip_impact_rate(1.0, screening=30.0).predicted_rate == pytest.approx(0.018)


def test_log_round_trip():
    text = (
        "# muflux-log v1\n"
        "timestamp,ch1,ch2,coinc,temp_c,rh_pct,p_hpa\n"
        "2022-06-01T10:00:00Z,701,698,40,21.5,48,1013.2\n"
        "garbage\n"
        "2022-06-01T10:01:00Z,705,690,41,,,\n"
    )
    parsed = m.parse_log(text)
    assert len(parsed.records) == 2 and parsed.diagnostics[0].line == 4
    assert m.serialize_log(parsed.records) == text.replace("garbage\n", "")
    (window,) = m.aggregate(parsed.records, 60)
    assert window.coinc_counts == 81 and window.partial
    with pytest.raises(m.FormatError):
        m.parse_log("not a log\n")


def test_convergence_error_carries_estimate():
    cfg = m.QuadratureConfig(target_rel_tol=1e-12, max_subdivisions=1)
    with pytest.raises(m.ConvergenceError) as info:
        m.total_rate(m.scintillator_telescope(), 0.3, config=cfg)
    assert info.value.best_estimate > 0
    with pytest.raises(m.ConfigError):
        m.QuadratureConfig(target_rel_tol=1e-15)
