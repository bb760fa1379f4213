#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "optorouter/dynamics.hpp"
#include "optorouter/errors.hpp"
#include "optorouter/model.hpp"
#include "optorouter/router.hpp"
#include "optorouter/spectra.hpp"
#include "optorouter/steadystate.hpp"

namespace py = pybind11;
using namespace optorouter;

namespace {

std::string field_repr(const char* name, std::initializer_list<std::pair<const char*, double>> fields) {
  std::string out = std::string(name) + "(";
  bool first = true;
  for (const auto& [k, v] : fields) {
    if (!first) out += ", ";
    first = false;
    out += std::string(k) + "=" + py::repr(py::float_(v)).cast<std::string>();
  }
  return out + ")";
}

// Column-wise view of a spectrum grid, ready for numpy.
py::dict grid_columns(const std::vector<SpectrumPoint>& points) {
  std::vector<double> nu, f1c, f1d, f3, f4, f5, f6, s_in, s_c, s_d;
  for (const SpectrumPoint& p : points) {
    nu.push_back(p.row.nu);
    f1c.push_back(p.probs.F1_c);
    f1d.push_back(p.probs.F1_d);
    f3.push_back(p.probs.F3);
    f4.push_back(p.probs.F4);
    f5.push_back(p.probs.F5);
    f6.push_back(p.probs.F6);
    s_in.push_back(p.decomposition.S_in_at_nu);
    s_c.push_back(p.decomposition.S_c_out);
    s_d.push_back(p.decomposition.S_d_out);
  }
  py::dict d;
  d["nu"] = nu;
  d["F1c"] = f1c;
  d["F1d"] = f1d;
  d["F3"] = f3;
  d["F4"] = f4;
  d["F5"] = f5;
  d["F6"] = f6;
  d["S_in"] = s_in;
  d["S_c_out"] = s_c;
  d["S_d_out"] = s_d;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Single-photon router on a modulated optomechanical cavity";

  // Base classes first: translators registered later are tried first.
  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  py::register_exception<NonConvergence>(m, "NonConvergence", numerical.ptr());
  py::register_exception<Multistability>(m, "Multistability", numerical.ptr());
  py::register_exception<NotAttainable>(m, "NotAttainable", numerical.ptr());
  py::register_exception<StepSizeTooLarge>(m, "StepSizeTooLarge", numerical.ptr());
  py::register_exception<ComplexCharPoly>(m, "ComplexCharPoly", numerical.ptr());
  py::register_exception<SingularMatrix>(m, "SingularMatrix", numerical.ptr());
  py::register_exception<NotConverged>(m, "NotConverged", numerical.ptr());
  py::register_exception<UnstableSystem>(m, "UnstableSystem", numerical.ptr());

  py::enum_<CaseTag>(m, "CaseTag").value("CaseI", CaseTag::CaseI).value("CaseII", CaseTag::CaseII);

  py::class_<RawParams>(m, "RawParams")
      .def(py::init<>())
      .def_readwrite("wavelength_lambda", &RawParams::wavelength_lambda)
      .def_readwrite("cavity_length_L", &RawParams::cavity_length_L)
      .def_readwrite("mirror_mass_m", &RawParams::mirror_mass_m)
      .def_readwrite("omega_m", &RawParams::omega_m)
      .def_readwrite("gamma_m", &RawParams::gamma_m)
      .def_readwrite("kappa", &RawParams::kappa)
      .def_readwrite("Delta", &RawParams::Delta)
      .def_readwrite("n_th", &RawParams::n_th)
      .def_readwrite("Gamma_photon", &RawParams::Gamma_photon)
      .def("__repr__", [](const RawParams& r) {
        return field_repr("RawParams", {{"wavelength_lambda", r.wavelength_lambda},
                                                   {"cavity_length_L", r.cavity_length_L},
                                                   {"mirror_mass_m", r.mirror_mass_m},
                                                   {"omega_m", r.omega_m},
                                                   {"gamma_m", r.gamma_m},
                                                   {"kappa", r.kappa},
                                                   {"Delta", r.Delta},
                                                   {"n_th", r.n_th},
                                                   {"Gamma_photon", r.Gamma_photon}});
      });

  py::class_<ModelParams, RawParams>(m, "ModelParams")
      .def_readonly("g0", &ModelParams::g0)
      .def_readonly("omega_c", &ModelParams::omega_c)
      .def_readonly("x_zpf", &ModelParams::x_zpf)
      .def("raw", &ModelParams::raw);

  py::class_<DriveParams>(m, "DriveParams")
      .def(py::init<>())
      .def(py::init([](double G, double epsilon_d, double omega_d) {
             return DriveParams{G, epsilon_d, omega_d};
           }),
           py::arg("G"), py::arg("epsilon_d") = 0.0, py::arg("omega_d") = 0.0)
      .def_readwrite("G", &DriveParams::G)
      .def_readwrite("epsilon_d", &DriveParams::epsilon_d)
      .def_readwrite("omega_d", &DriveParams::omega_d)
      .def("case_tag", &DriveParams::case_tag)
      .def("__repr__", [](const DriveParams& d) {
        return field_repr("DriveParams",
                                       {{"G", d.G}, {"epsilon_d", d.epsilon_d}, {"omega_d", d.omega_d}});
      });

  py::class_<ReferencePreset>(m, "Preset")
      .def_readonly("raw", &ReferencePreset::raw)
      .def_readonly("drive", &ReferencePreset::drive);

  m.def("validate", py::overload_cast<const RawParams&>(&validate));
  m.def("validate", py::overload_cast<const DriveParams&>(&validate));
  m.def("derive_constants", &derive_constants);
  m.def("preset", &reference_preset, py::arg("which") = CaseTag::CaseII);

  py::class_<SteadyState>(m, "SteadyState")
      .def_readonly("alpha", &SteadyState::alpha)
      .def_readonly("beta", &SteadyState::beta)
      .def_readonly("G_eff", &SteadyState::G_eff)
      .def_readonly("Delta_prime", &SteadyState::Delta_prime)
      .def_readonly("residual", &SteadyState::residual);
  m.def("solve_steady", [](const ModelParams& p, double eps) { return solve_steady(p, eps); },
        py::arg("params"), py::arg("epsilon_p"));
  m.def("pump_for_coupling",
        [](const ModelParams& p, double G) { return pump_for_coupling(p, G); }, py::arg("params"),
        py::arg("G_target"));
  m.def("steady_residual", &steady_residual);

  py::class_<NoiseCouplings>(m, "NoiseCouplings")
      .def_readonly("optical_c", &NoiseCouplings::optical_c)
      .def_readonly("optical_d", &NoiseCouplings::optical_d)
      .def_readonly("mechanical", &NoiseCouplings::mechanical);

  py::class_<DriftMatrix>(m, "DriftMatrix")
      .def_readonly("entries", &DriftMatrix::entries)
      .def_readonly("case_tag", &DriftMatrix::case_tag)
      .def_readonly("delta_small", &DriftMatrix::delta_small)
      .def_readonly("Delta_m", &DriftMatrix::Delta_m)
      .def_readonly("noise", &DriftMatrix::noise)
      .def_readonly("warnings", &DriftMatrix::warnings);
  m.def("drift_matrix", py::overload_cast<const ModelParams&, const DriveParams&>(&drift_matrix));
  m.def("drift_matrix",
        py::overload_cast<const ModelParams&, const DriveParams&, CaseTag>(&drift_matrix));

  py::class_<StabilityReport>(m, "StabilityReport")
      .def_readonly("eigenvalues", &StabilityReport::eigenvalues)
      .def_readonly("max_real_part", &StabilityReport::max_real_part)
      .def_readonly("routh_hurwitz_pass", &StabilityReport::routh_hurwitz_pass)
      .def_readonly("consistent", &StabilityReport::consistent)
      .def_readonly("char_poly", &StabilityReport::char_poly)
      .def_readonly("diagnostic", &StabilityReport::diagnostic)
      .def_property_readonly("stable", &StabilityReport::stable);
  m.def("assess_stability", &assess_stability);
  m.def("characteristic_polynomial", &characteristic_polynomial);
  m.def("routh_hurwitz_stable", [](const std::vector<double>& coefficients) {
    return routh_hurwitz(coefficients).stable;
  });

  py::class_<ScatterProbabilities>(m, "ScatterProbabilities")
      .def_readonly("F1c", &ScatterProbabilities::F1_c)
      .def_readonly("F1d", &ScatterProbabilities::F1_d)
      .def_readonly("F3", &ScatterProbabilities::F3)
      .def_readonly("F4", &ScatterProbabilities::F4)
      .def_readonly("F5", &ScatterProbabilities::F5)
      .def_readonly("F6", &ScatterProbabilities::F6);
  py::class_<TransferRow>(m, "TransferRow")
      .def_readonly("nu", &TransferRow::nu)
      .def_readonly("f", &TransferRow::f)
      .def_readonly("f_primed", &TransferRow::f_primed)
      .def_readonly("solve_residual", &TransferRow::solve_residual);
  m.def("transfer_row", &transfer_row);
  m.def("scatter", [](const DriftMatrix& d, double nu) {
    return probabilities(port_coefficients(transfer_row(d, nu)));
  });
  m.def("input_spectrum", &input_spectrum, py::arg("Gamma"), py::arg("nu"));

  py::enum_<ProbePort>(m, "ProbePort")
      .value("Optical", ProbePort::Optical)
      .value("Mechanical", ProbePort::Mechanical);
  m.def("classical_probe_oracle",
        [](const DriftMatrix& d, double nu, ProbePort port) {
          return classical_probe_oracle(d, nu, port);
        });

  m.def(
      "spectrum",
      [](const DriftMatrix& d, double nu_min, double nu_max, std::size_t count, double Gamma,
         double n_th, unsigned workers) {
        std::vector<SpectrumPoint> points;
        {
          py::gil_scoped_release release;
          points = evaluate_grid(d, NuGrid{nu_min, nu_max, count}, Gamma, n_th, workers);
        }
        return grid_columns(points);
      },
      py::arg("drift"), py::arg("nu_min"), py::arg("nu_max"), py::arg("count"), py::arg("Gamma"),
      py::arg("n_th"), py::arg("workers") = 1);

  py::enum_<Decision>(m, "Decision")
      .value("Transmit", Decision::Transmit)
      .value("Reflect", Decision::Reflect)
      .value("Indeterminate", Decision::Indeterminate);
  py::class_<RoutingVerdict>(m, "RoutingVerdict")
      .def_readonly("decision", &RoutingVerdict::decision)
      .def_readonly("contrast", &RoutingVerdict::contrast)
      .def_readonly("snr_c", &RoutingVerdict::snr_c)
      .def_readonly("snr_d", &RoutingVerdict::snr_d)
      .def_readonly("operating_nu", &RoutingVerdict::operating_nu)
      .def_readonly("probs", &RoutingVerdict::probs);
  m.def("route_decision",
        [](const ModelParams& p, const DriveParams& d, double Gamma, double n_th) {
          return route_decision(p, d, Gamma, n_th);
        },
        py::arg("params"), py::arg("drive"), py::arg("Gamma"), py::arg("n_th"));

  m.def(
      "reproduce",
      [](const std::string& figure, unsigned workers) {
        FigureDataset data;
        {
          py::gil_scoped_release release;
          data = reproduce(figure_from_string(figure), workers);
        }
        py::list curves;
        for (const Curve& c : data.curves) {
          py::dict entry = grid_columns(c.points);
          entry["label"] = c.spec.label;
          curves.append(entry);
        }
        return curves;
      },
      py::arg("figure"), py::arg("workers") = 1);
}
