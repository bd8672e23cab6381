// Python bindings for the engine core: parameters, linear response,
// thermodynamics, drive optimization, and Gaussian entanglement.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>

#include "duetherm/entangle.hpp"
#include "duetherm/integrate.hpp"
#include "duetherm/pareto.hpp"
#include "duetherm/params.hpp"
#include "duetherm/response.hpp"
#include "duetherm/thermo.hpp"

namespace py = pybind11;
using namespace duetherm;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Driven two-oscillator heat engine: response, power, Pareto "
            "fronts, and Gaussian entanglement";

  py::register_exception<NoConvergence>(m, "NoConvergence");
  py::register_exception<NonPhysical>(m, "NonPhysical");
  py::register_exception<NoRoot>(m, "NoRoot");
  py::register_exception<NonPositiveWork>(m, "NonPositiveWork");
  py::register_exception<FundamentalMismatch>(m, "FundamentalMismatch");

  py::enum_<Topology>(m, "Topology")
      .value("Joint", Topology::Joint)
      .value("Independent", Topology::Independent);

  py::enum_<CriticalMode>(m, "CriticalMode")
      .value("Exact", CriticalMode::Exact)
      .value("StrongLimit", CriticalMode::StrongLimit);

  py::class_<EngineParams>(m, "EngineParams")
      .def(py::init<>())
      .def_readwrite("omega_a", &EngineParams::omega_a)
      .def_readwrite("omega_b", &EngineParams::omega_b)
      .def_readwrite("gamma2", &EngineParams::gamma2)
      .def_readwrite("omega_c", &EngineParams::omega_c)
      .def_readwrite("t1", &EngineParams::t1)
      .def_readwrite("t2", &EngineParams::t2)
      .def_readwrite("d1", &EngineParams::d1)
      .def_readwrite("gamma1", &EngineParams::gamma1)
      .def_readwrite("omega1", &EngineParams::omega1)
      .def_readwrite("m", &EngineParams::m)
      .def_readwrite("topology", &EngineParams::topology)
      .def("omega_bar", &EngineParams::omega_bar)
      .def("delta_sq", &EngineParams::delta_sq)
      .def("carnot", &EngineParams::carnot)
      .def("__repr__", [](const EngineParams& p) {
        return "EngineParams(" + params_to_json(p) + ")";
      });

  m.def("validate_params", &validate_params, py::arg("params"));
  m.def("params_to_json", &params_to_json, py::arg("params"));
  m.def(
      "params_from_json",
      [](const std::string& text) {
        std::vector<std::string> errors;
        EngineParams p = params_from_json(text, errors);
        for (const auto& v : validate_params(p)) errors.push_back(v);
        if (!errors.empty()) {
          std::string what = "invalid parameters";
          for (const auto& e : errors) what += "; " + e;
          throw std::invalid_argument(what);
        }
        return p;
      },
      py::arg("text"));

  // response
  py::class_<ChiIm>(m, "ChiIm")
      .def_readonly("aa", &ChiIm::aa)
      .def_readonly("ab", &ChiIm::ab)
      .def_readonly("bb", &ChiIm::bb);
  m.def("chi_im", &chi_im, py::arg("params"), py::arg("omega"));
  m.def("finite_eigenvalue", &finite_eigenvalue, py::arg("params"), py::arg("omega"));
  m.def("chi_eff_im", &chi_eff_im, py::arg("params"), py::arg("omega"),
        py::arg("phi"));
  m.def(
      "normal_modes",
      [](const EngineParams& p) {
        auto z = normal_modes(p);
        return std::vector<cplx>(z.begin(), z.end());
      },
      py::arg("params"));

  // thermodynamics
  py::class_<DriveSpectrum>(m, "DriveSpectrum")
      .def(py::init<>())
      .def_readwrite("fundamental", &DriveSpectrum::fundamental)
      .def_readwrite("coeffs", &DriveSpectrum::coeffs)
      .def_readwrite("norms", &DriveSpectrum::norms);
  m.def("monochromatic_drive", &monochromatic_drive, py::arg("omega_drive"),
        py::arg("antiphase") = false);
  m.def("drive_norm", &drive_norm, py::arg("drive"), py::arg("l"));

  py::class_<ThermoReport>(m, "ThermoReport")
      .def_readonly("power", &ThermoReport::power)
      .def_readonly("j1", &ThermoReport::j1)
      .def_readonly("j2", &ThermoReport::j2)
      .def_readonly("sigma", &ThermoReport::sigma)
      .def_readonly("eta", &ThermoReport::eta)
      .def_readonly("eta_ratio", &ThermoReport::eta_ratio)
      .def_readonly("engine", &ThermoReport::engine);
  m.def("report", &report, py::arg("params"), py::arg("drive"));
  m.def("power_monochromatic", &power_monochromatic, py::arg("params"),
        py::arg("omega_drive"), py::arg("phi"));
  m.def("power_weak_limit", &power_weak_limit, py::arg("params"),
        py::arg("omega_drive"));
  m.def("power_strong_pi", &power_strong_pi, py::arg("params"),
        py::arg("omega_drive"));
  m.def("power_strong_zero", &power_strong_zero, py::arg("params"),
        py::arg("omega_drive"));

  py::class_<WorksReport>(m, "WorksReport")
      .def_readonly("w1", &WorksReport::w1)
      .def_readonly("w2", &WorksReport::w2)
      .def_readonly("w3", &WorksReport::w3)
      .def_readonly("delta_w", &WorksReport::delta_w)
      .def_readonly("delta_w_closed", &WorksReport::delta_w_closed);
  m.def("works_and_delta", &works_and_delta, py::arg("params"),
        py::arg("omega1_star"), py::arg("phi"));

  py::class_<MapPoint>(m, "MapPoint")
      .def_readonly("omega1", &MapPoint::omega1)
      .def_readonly("omega_drive", &MapPoint::omega_drive)
      .def_readonly("p_tilde", &MapPoint::p_tilde)
      .def_readonly("phi_star", &MapPoint::phi_star);
  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<>())
      .def_readwrite("omega_drive_max", &GridSpec::omega_drive_max)
      .def_readwrite("omega_drive_points", &GridSpec::omega_drive_points)
      .def_readwrite("omega1_max", &GridSpec::omega1_max)
      .def_readwrite("omega1_points", &GridSpec::omega1_points);
  m.def("power_map", &power_map, py::arg("params"), py::arg("grid"),
        py::arg("phi_set") = std::vector<double>{0.0, std::numbers::pi},
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());

  // drive optimization
  py::class_<QuadraticForms>(m, "QuadraticForms")
      .def_readonly("fundamental", &QuadraticForms::fundamental)
      .def_readonly("n_max", &QuadraticForms::n_max);
  m.def("build_forms", &build_forms, py::arg("params"), py::arg("omega_drive"),
        py::arg("n_max"), py::arg("allow_wide_band") = false,
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());

  py::class_<PowerSigma>(m, "PowerSigma")
      .def_readonly("power", &PowerSigma::power)
      .def_readonly("sigma", &PowerSigma::sigma);
  m.def("evaluate", &evaluate, py::arg("forms"), py::arg("drive"));

  py::class_<OptimizeResult>(m, "OptimizeResult")
      .def_readonly("drive", &OptimizeResult::drive)
      .def_readonly("power", &OptimizeResult::power)
      .def_readonly("sigma", &OptimizeResult::sigma)
      .def_readonly("converged", &OptimizeResult::converged);
  m.def("optimize_power", &optimize_power, py::arg("forms"), py::arg("norms"),
        py::arg("seed"), py::call_guard<py::gil_scoped_release>());
  m.def("optimize_point", &optimize_point, py::arg("forms"),
        py::arg("sigma_target"), py::arg("norms"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("sigma_ladder", &sigma_ladder, py::arg("forms"), py::arg("norms"),
        py::arg("seed"), py::arg("rungs") = 24,
        py::call_guard<py::gil_scoped_release>());

  py::class_<FrontPoint>(m, "FrontPoint")
      .def_readonly("sigma", &FrontPoint::sigma)
      .def_readonly("neg_power", &FrontPoint::neg_power)
      .def_readonly("eta", &FrontPoint::eta)
      .def_readonly("drive", &FrontPoint::drive)
      .def_readonly("converged", &FrontPoint::converged);
  py::class_<ParetoFront>(m, "ParetoFront")
      .def_readonly("all_points", &ParetoFront::all_points)
      .def_readonly("points", &ParetoFront::points)
      .def_readonly("eta_points", &ParetoFront::eta_points);
  m.def("pareto_front", &pareto_front, py::arg("forms"), py::arg("sigma_ladder"),
        py::arg("norms"), py::arg("seeds"), py::arg("base_seed") = 42,
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());

  py::class_<SupportReport>(m, "SupportReport")
      .def_readonly("count", &SupportReport::count)
      .def_readonly("frequencies", &SupportReport::frequencies);
  m.def("spectral_support", &spectral_support, py::arg("drive"),
        py::arg("mass_fraction"));

  // entanglement
  py::class_<GaussianState>(m, "GaussianState")
      .def_readonly("cov", &GaussianState::cov)
      .def_readonly("nu_tilde", &GaussianState::nu_tilde)
      .def_readonly("log_negativity", &GaussianState::log_negativity)
      .def_readonly("cutoff", &GaussianState::cutoff);
  py::class_<SymplecticResult>(m, "SymplecticResult")
      .def_readonly("nu_tilde", &SymplecticResult::nu_tilde)
      .def_readonly("log_negativity", &SymplecticResult::log_negativity);
  m.def("covariance", &covariance, py::arg("params"),
        py::call_guard<py::gil_scoped_release>());
  m.def("gaussian_state", &gaussian_state, py::arg("params"),
        py::call_guard<py::gil_scoped_release>());
  m.def("symplectic_nu", &symplectic_nu, py::arg("state"));
  m.def("nu_strong_closed", &nu_strong_closed, py::arg("params"));
  m.def("critical_temperature", &critical_temperature, py::arg("params"),
        py::arg("mode"), py::call_guard<py::gil_scoped_release>());
  m.def("nu_from_works", &nu_from_works, py::arg("delta_w_0"),
        py::arg("delta_w_pi"), py::arg("t2"), py::arg("hybrid"));

  m.attr("__version__") = "0.1.0";
}
