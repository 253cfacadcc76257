#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

#include "muflux/atmosphere.hpp"
#include "muflux/attenuation.hpp"
#include "muflux/counting.hpp"
#include "muflux/errors.hpp"
#include "muflux/fitting.hpp"
#include "muflux/geometry.hpp"
#include "muflux/ingest.hpp"
#include "muflux/rate_model.hpp"

namespace py = pybind11;
using namespace muflux;

namespace {

std::string rate_repr(double rate, double sigma) {
  std::ostringstream out;
  out << rate << " +- " << sigma;
  return out.str();
}

Timestamp timestamp_from(const std::string& text) {
  const auto t = parse_timestamp(text);
  if (!t) throw DomainError("bad timestamp '" + text + "'");
  return *t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cosmic-ray muon rate modelling and counting analysis";
  m.attr("__version__") = "0.1.0";

  // ValueError for domain problems, plain exceptions for the rest.
  auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<FitError>(m, "FitError", PyExc_RuntimeError);
  static py::exception<ConvergenceError> convergence(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConvergenceError& e) {
      py::object exc = py::reinterpret_borrow<py::object>(convergence)(e.what());
      exc.attr("best_estimate") = e.best_estimate();
      exc.attr("error_estimate") = e.error_estimate();
      PyErr_SetObject(convergence.ptr(), exc.ptr());
    }
  });
  (void)domain_error;

  // geometry
  py::enum_<DetectorKind>(m, "DetectorKind")
      .value("TELESCOPE", DetectorKind::Telescope)
      .value("SOLID_BODY", DetectorKind::SolidBody);
  py::class_<ApertureAngles>(m, "ApertureAngles")
      .def_readonly("alpha", &ApertureAngles::alpha)
      .def_readonly("beta", &ApertureAngles::beta);
  m.def("aperture_angles", &aperture_angles, py::arg("length_cm"), py::arg("width_cm"),
        py::arg("gap_cm"));
  py::class_<DetectorGeometry>(m, "DetectorGeometry")
      .def_static("telescope", &DetectorGeometry::telescope, py::arg("length_cm"),
                  py::arg("width_cm"), py::arg("gap_cm"))
      .def_static("solid_body", &DetectorGeometry::solid_body, py::arg("length_cm"),
                  py::arg("width_cm"), py::arg("thickness_cm"))
      .def_property_readonly("length", &DetectorGeometry::length)
      .def_property_readonly("width", &DetectorGeometry::width)
      .def_property_readonly("gap", &DetectorGeometry::gap)
      .def_property_readonly("alpha", &DetectorGeometry::alpha)
      .def_property_readonly("beta", &DetectorGeometry::beta)
      .def_property_readonly("kind", &DetectorGeometry::kind)
      .def_property_readonly("face_area", &DetectorGeometry::face_area);
  py::class_<ChipGeometry>(m, "ChipGeometry")
      .def(py::init<double, double, double>(), py::arg("side_a_mm"), py::arg("side_b_mm"),
           py::arg("thickness_mm"))
      .def_readwrite("side_a_mm", &ChipGeometry::side_a_mm)
      .def_readwrite("side_b_mm", &ChipGeometry::side_b_mm)
      .def_readwrite("thickness_mm", &ChipGeometry::thickness_mm);
  m.def("chip_as_detector", &chip_as_detector, py::arg("chip"));
  m.def("effective_area", &effective_area, py::arg("geometry"), py::arg("theta"), py::arg("phi"));
  m.def("scintillator_telescope", &presets::scintillator_telescope);
  m.def("silicon_chip", &presets::silicon_chip);

  // atmosphere
  py::class_<AtmosphereModel>(m, "AtmosphereModel")
      .def(py::init([](double r, double a, double i0) { return AtmosphereModel{r, a, i0}; }),
           py::arg("earth_radius_km") = 6400.0, py::arg("atmosphere_km") = 10.0,
           py::arg("vertical_intensity") = 0.420)
      .def_readwrite("earth_radius_km", &AtmosphereModel::earth_radius_km)
      .def_readwrite("atmosphere_km", &AtmosphereModel::atmosphere_km)
      .def_readwrite("vertical_intensity", &AtmosphereModel::vertical_intensity);
  m.def("path_length", &path_length, py::arg("theta"), py::arg("model") = AtmosphereModel{});
  m.def("corrected_intensity", &corrected_intensity, py::arg("theta"),
        py::arg("model") = AtmosphereModel{});
  m.def("transformed_zenith", &transformed_zenith, py::arg("theta_zenith"), py::arg("theta"),
        py::arg("phi"));

  // rate model
  py::enum_<QuadratureScheme>(m, "QuadratureScheme")
      .value("GAUSS_LEGENDRE", QuadratureScheme::GaussLegendreComposite)
      .value("SIMPSON", QuadratureScheme::AdaptiveSimpson);
  py::enum_<AngularWeight>(m, "AngularWeight")
      .value("ABS_SIN", AngularWeight::AbsSin)
      .value("COS", AngularWeight::Cos);
  py::class_<QuadratureConfig>(m, "QuadratureConfig")
      .def(py::init([](QuadratureScheme scheme, double tol, int max_sub, double cut,
                       AngularWeight weight) {
             QuadratureConfig cfg{scheme, tol, max_sub, cut, weight};
             cfg.validate();
             return cfg;
           }),
           py::arg("scheme") = QuadratureScheme::GaussLegendreComposite,
           py::arg("target_rel_tol") = 1e-6, py::arg("max_subdivisions") = 2000,
           py::arg("horizon_cut_deg") = 15.0, py::arg("angular_weight") = AngularWeight::AbsSin)
      .def_readwrite("scheme", &QuadratureConfig::scheme)
      .def_readwrite("target_rel_tol", &QuadratureConfig::target_rel_tol)
      .def_readwrite("max_subdivisions", &QuadratureConfig::max_subdivisions)
      .def_readwrite("horizon_cut_deg", &QuadratureConfig::horizon_cut_deg)
      .def_readwrite("angular_weight", &QuadratureConfig::angular_weight);
  py::class_<RatePrediction>(m, "RatePrediction")
      .def_readonly("rate", &RatePrediction::rate)
      .def_readonly("numerical_error", &RatePrediction::numerical_error)
      .def("__repr__", [](const RatePrediction& r) { return rate_repr(r.rate, r.numerical_error); });
  m.def("total_rate", &total_rate, py::arg("geometry"), py::arg("theta_zenith"),
        py::arg("model") = AtmosphereModel{}, py::arg("config") = QuadratureConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "angular_sweep",
      [](const DetectorGeometry& g, const std::vector<double>& angles, const AtmosphereModel& model,
         const QuadratureConfig& cfg) {
        std::vector<RatePrediction> out;
        for (const auto& s : angular_sweep(g, angles, model, cfg)) out.push_back(s.prediction);
        return out;
      },
      py::arg("geometry"), py::arg("angles"), py::arg("model") = AtmosphereModel{},
      py::arg("config") = QuadratureConfig{}, py::call_guard<py::gil_scoped_release>());
  m.def("mc_rate", &mc_rate, py::arg("geometry"), py::arg("theta_zenith"),
        py::arg("model") = AtmosphereModel{}, py::arg("n_samples") = 1'000'000,
        py::arg("seed") = 7, py::arg("config") = QuadratureConfig{},
        py::call_guard<py::gil_scoped_release>());

  // counting
  py::class_<RateValue>(m, "RateValue")
      .def(py::init<double, double>(), py::arg("rate"), py::arg("sigma") = 0.0)
      .def_readwrite("rate", &RateValue::rate)
      .def_readwrite("sigma", &RateValue::sigma)
      .def("__repr__", [](const RateValue& r) { return rate_repr(r.rate, r.sigma); });
  py::class_<CoincidenceSetup>(m, "CoincidenceSetup")
      .def(py::init<double, double>(), py::arg("tau_us") = 20.0, py::arg("tau_sigma_us") = 2.0)
      .def_readwrite("tau_us", &CoincidenceSetup::tau_us)
      .def_readwrite("tau_sigma_us", &CoincidenceSetup::tau_sigma_us);
  py::class_<CorrectedRate>(m, "CorrectedRate")
      .def_readonly("rate", &CorrectedRate::rate)
      .def_readonly("sigma", &CorrectedRate::sigma)
      .def_readonly("accidental_dominated", &CorrectedRate::accidental_dominated);
  m.def(
      "rate_from_counts",
      [](std::uint64_t counts, double live_time_min) {
        return rate_from_counts(counts, live_time_min).value();
      },
      py::arg("counts"), py::arg("live_time_min"));
  m.def("accidental_rate", &accidental_rate, py::arg("n1"), py::arg("n2"),
        py::arg("setup") = CoincidenceSetup{});
  m.def("corrected_coincidence", &corrected_coincidence, py::arg("raw"), py::arg("accidental"));

  // fitting
  py::class_<FitResult>(m, "FitResult")
      .def_readonly("i0", &FitResult::i0)
      .def_readonly("i0_sigma", &FitResult::i0_sigma)
      .def_readonly("chi2", &FitResult::chi2)
      .def_readonly("ndf", &FitResult::ndf)
      .def_readonly("n_points", &FitResult::n_points);
  m.def(
      "fit_intensity",
      [](const DetectorGeometry& g, const std::vector<double>& angles,
         const std::vector<double>& rates, const std::vector<double>& sigmas,
         const std::vector<bool>& flagged, const AtmosphereModel& model,
         const QuadratureConfig& cfg, bool weighted, bool include_flagged) {
        if (rates.size() != angles.size() || sigmas.size() != angles.size() ||
            (!flagged.empty() && flagged.size() != angles.size())) {
          throw DomainError("angles, rates, sigmas and flagged must have equal lengths");
        }
        AngularSweep sweep;
        for (std::size_t i = 0; i < angles.size(); ++i) {
          sweep.points.push_back({angles[i], rates[i], sigmas[i], !flagged.empty() && flagged[i]});
        }
        py::gil_scoped_release release;
        return fit_intensity(sweep, g, model, cfg, {weighted, include_flagged});
      },
      py::arg("geometry"), py::arg("angles"), py::arg("rates"), py::arg("sigmas"),
      py::arg("flagged") = std::vector<bool>{}, py::arg("model") = AtmosphereModel{},
      py::arg("config") = QuadratureConfig{}, py::arg("weighted") = true,
      py::arg("include_flagged") = false);

  // attenuation
  py::class_<ScreeningFactor>(m, "ScreeningFactor")
      .def_readonly("factor", &ScreeningFactor::factor)
      .def_readonly("sigma", &ScreeningFactor::sigma);
  py::class_<SiteMeasurement>(m, "SiteMeasurement")
      .def(py::init([](std::string name, double depth, RateValue rate, double conversion) {
             return SiteMeasurement{std::move(name), depth, conversion, rate};
           }),
           py::arg("name"), py::arg("depth_m"), py::arg("coincidence"),
           py::arg("rock_conversion") = kMweDefault)
      .def_readwrite("name", &SiteMeasurement::name)
      .def_readwrite("depth_m", &SiteMeasurement::depth_m)
      .def_readwrite("rock_conversion", &SiteMeasurement::rock_conversion)
      .def_readwrite("coincidence", &SiteMeasurement::coincidence);
  py::class_<SiteReport>(m, "SiteReport")
      .def_readonly("name", &SiteReport::name)
      .def_readonly("depth_m", &SiteReport::depth_m)
      .def_readonly("rate", &SiteReport::rate)
      .def_readonly("rate_sigma", &SiteReport::rate_sigma)
      .def_readonly("screening", &SiteReport::screening)
      .def_readonly("mwe", &SiteReport::mwe)
      .def_readonly("mwe_low", &SiteReport::mwe_low)
      .def_readonly("mwe_high", &SiteReport::mwe_high);
  py::class_<DepthReport>(m, "DepthReport")
      .def_readonly("reference", &DepthReport::reference)
      .def_readonly("sites", &DepthReport::sites);
  py::class_<ChipExposure>(m, "ChipExposure")
      .def_readonly("predicted_rate", &ChipExposure::predicted_rate)
      .def_readonly("predicted_rate_hz", &ChipExposure::predicted_rate_hz);
  m.def("screening_factor", &screening_factor, py::arg("surface"), py::arg("depth"));
  m.def("mwe_depth", &mwe_depth, py::arg("depth_m"), py::arg("conversion") = kMweDefault);
  m.def("chip_impact_rate", &chip_impact_rate, py::arg("area_cm2"),
        py::arg("surface_rate_density") = kChipSurfaceRateDensity, py::arg("screening"));
  m.def("depth_report", &depth_report, py::arg("sites"));

  // ingest
  py::class_<LogRecord>(m, "LogRecord")
      .def(py::init([](const std::string& ts, std::uint64_t ch1, std::uint64_t ch2,
                       std::uint64_t coinc, std::optional<double> t, std::optional<double> rh,
                       std::optional<double> p) {
             LogRecord r;
             r.timestamp = timestamp_from(ts);
             r.ch1 = ch1;
             r.ch2 = ch2;
             r.coinc = coinc;
             r.temperature_c = t;
             r.humidity_pct = rh;
             r.pressure_hpa = p;
             return r;
           }),
           py::arg("timestamp"), py::arg("ch1"), py::arg("ch2"), py::arg("coinc"),
           py::arg("temperature_c") = py::none(), py::arg("humidity_pct") = py::none(),
           py::arg("pressure_hpa") = py::none())
      .def_property_readonly("timestamp",
                             [](const LogRecord& r) { return format_timestamp(r.timestamp); })
      .def_readonly("ch1", &LogRecord::ch1)
      .def_readonly("ch2", &LogRecord::ch2)
      .def_readonly("coinc", &LogRecord::coinc)
      .def_readonly("temperature_c", &LogRecord::temperature_c)
      .def_readonly("humidity_pct", &LogRecord::humidity_pct)
      .def_readonly("pressure_hpa", &LogRecord::pressure_hpa)
      .def_readonly("line", &LogRecord::line)
      .def(py::self == py::self);
  py::class_<LineDiagnostic>(m, "LineDiagnostic")
      .def_readonly("line", &LineDiagnostic::line)
      .def_readonly("message", &LineDiagnostic::message);
  py::class_<ParseResult>(m, "ParseResult")
      .def_readonly("records", &ParseResult::records)
      .def_readonly("diagnostics", &ParseResult::diagnostics);
  py::class_<RateSummary>(m, "RateSummary")
      .def_property_readonly("window_start",
                             [](const RateSummary& s) { return format_timestamp(s.window_start); })
      .def_property_readonly("window_end",
                             [](const RateSummary& s) { return format_timestamp(s.window_end); })
      .def_readonly("n_records", &RateSummary::n_records)
      .def_readonly("live_time_min", &RateSummary::live_time_min)
      .def_property_readonly("ch1", [](const RateSummary& s) { return s.ch1.value(); })
      .def_property_readonly("ch2", [](const RateSummary& s) { return s.ch2.value(); })
      .def_property_readonly("coinc", [](const RateSummary& s) { return s.coinc.value(); })
      .def_property_readonly("coinc_counts", [](const RateSummary& s) { return s.coinc.counts(); })
      .def_readonly("partial", &RateSummary::partial);
  m.def(
      "parse_log",
      [](const std::string& text, std::size_t budget) {
        std::istringstream in(text);
        return parse_log(in, {budget});
      },
      py::arg("text"), py::arg("bad_line_budget") = 100);
  m.def(
      "serialize_log",
      [](const std::vector<LogRecord>& records) { return serialize_log(records); },
      py::arg("records"));
  m.def(
      "aggregate",
      [](const std::vector<LogRecord>& records, double window_min, double period_s) {
        return aggregate(records, window_min, period_s);
      },
      py::arg("records"), py::arg("window_min"), py::arg("sample_period_s") = 60.0);
}
