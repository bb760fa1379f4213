#include "optorouter/router.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "optorouter/dynamics.hpp"
#include "optorouter/errors.hpp"

namespace optorouter {

double snr(const SpectrumDecomposition& decomp, OutputPort port) {
  const double signal = port == OutputPort::Reflected ? decomp.signal_c : decomp.signal_d;
  const double noise = decomp.noise_floor();
  if (noise == 0) return std::numeric_limits<double>::infinity();
  return signal / noise;
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::Transmit: return "Transmit";
    case Decision::Reflect: return "Reflect";
    case Decision::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

Decision decide(double contrast, double snr_c, double snr_d, const RouterThresholds& t) {
  const bool audible = std::max(snr_c, snr_d) >= t.snr;
  if (audible && contrast < -t.contrast) return Decision::Transmit;
  if (audible && contrast > t.contrast) return Decision::Reflect;
  return Decision::Indeterminate;
}

double operating_nu(const ModelParams& params, CaseTag which) {
  return which == CaseTag::CaseI ? params.omega_m : 0.0;
}

RoutingVerdict route_decision(const ModelParams& params, const DriveParams& drive, double Gamma,
                              double n_th, const RouterThresholds& thresholds) {
  return route_decision(params, drive, drive.case_tag(), Gamma, n_th, thresholds);
}

RoutingVerdict route_decision(const ModelParams& params, const DriveParams& drive, CaseTag which,
                              double Gamma, double n_th, const RouterThresholds& thresholds) {
  const DriftMatrix m = drift_matrix(params, drive, which);
  const StabilityReport stability = assess_stability(m);
  if (!stability.stable()) {
    std::ostringstream msg;
    msg << "drift matrix is unstable (max real part " << stability.max_real_part << ")";
    throw UnstableSystem(msg.str());
  }

  RoutingVerdict v;
  v.case_tag = m.case_tag;
  v.operating_nu = operating_nu(params, m.case_tag);
  v.Gamma = Gamma;
  v.n_th = n_th;
  const SpectrumPoint pt = evaluate_point(m, v.operating_nu, Gamma, n_th);
  v.probs = pt.probs;
  v.decomposition = pt.decomposition;

  const double total = v.probs.F1_c + v.probs.F1_d;
  v.contrast = total > 0 ? (v.probs.F1_c - v.probs.F1_d) / total : 0.0;
  v.snr_c = snr(v.decomposition, OutputPort::Reflected);
  v.snr_d = snr(v.decomposition, OutputPort::Transmitted);
  v.decision = decide(v.contrast, v.snr_c, v.snr_d, thresholds);
  return v;
}

const char* to_string(FigureId id) {
  switch (id) {
    case FigureId::Fig2: return "fig2";
    case FigureId::Fig3: return "fig3";
    case FigureId::Fig4: return "fig4";
  }
  return "fig2";
}

FigureId figure_from_string(const std::string& name) {
  if (name == "fig2") return FigureId::Fig2;
  if (name == "fig3") return FigureId::Fig3;
  if (name == "fig4") return FigureId::Fig4;
  throw ValidationError("unknown figure '" + name + "' (expected fig2, fig3 or fig4)");
}

NuGrid default_grid(const ModelParams& params, CaseTag which) {
  if (which == CaseTag::CaseI) return {0.0, 2.0 * params.omega_m, 4001};
  return {-params.omega_m, params.omega_m, 4001};
}

namespace {

std::string ratio_label(const char* name, double value) {
  std::ostringstream os;
  os << name << "=" << value;
  return os.str();
}

}  // namespace

std::vector<CurveSpec> figure_curves(FigureId id) {
  std::vector<CurveSpec> curves;
  if (id == FigureId::Fig2) {
    const ReferencePreset preset = reference_preset(CaseTag::CaseI);
    const ModelParams params = derive_constants(preset.raw);
    for (double ratio : {1e-4, 0.1, 0.2}) {
      curves.push_back({ratio_label("G/omega_m", ratio), params,
                        DriveParams{ratio * params.omega_m, 0.0, 0.0}});
    }
    return curves;
  }

  const ReferencePreset preset = reference_preset(CaseTag::CaseII);
  const ModelParams params = derive_constants(preset.raw);
  const std::vector<double> ratios =
      id == FigureId::Fig3 ? std::vector<double>{0.8, 1.0} : std::vector<double>{0.8, 0.85, 0.9, 1.0};
  for (double ratio : ratios) {
    DriveParams drive = preset.drive;
    drive.omega_d = ratio * params.omega_m;
    curves.push_back({ratio_label("omega_d/omega_m", ratio), params, drive});
  }
  return curves;
}

FigureDataset reproduce(FigureId id, unsigned workers) {
  FigureDataset data;
  data.figure = id;
  for (CurveSpec& spec : figure_curves(id)) {
    const DriftMatrix m = drift_matrix(spec.params, spec.drive);
    data.grid = default_grid(spec.params, m.case_tag);
    Curve curve{std::move(spec), {}};
    curve.points = evaluate_grid(m, data.grid, curve.spec.params.Gamma_photon,
                                 curve.spec.params.n_th, workers);
    data.curves.push_back(std::move(curve));
  }
  return data;
}

}  // namespace optorouter
