#include "optorouter/cli/run.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "optorouter/cli/output.hpp"
#include "optorouter/dynamics.hpp"
#include "optorouter/errors.hpp"
#include "optorouter/parallel.hpp"
#include "optorouter/router.hpp"
#include "optorouter/steadystate.hpp"

namespace optorouter::cli {

using nlohmann::json;
namespace fs = std::filesystem;

Subcommand subcommand_from_string(std::string_view name) {
  if (name == "steady") return Subcommand::Steady;
  if (name == "stability") return Subcommand::Stability;
  if (name == "spectrum") return Subcommand::Spectrum;
  if (name == "route") return Subcommand::Route;
  if (name == "reproduce") return Subcommand::Reproduce;
  if (name == "sweep") return Subcommand::Sweep;
  throw ValidationError("unknown subcommand '" + std::string(name) + "'");
}

const char* to_string(Subcommand sub) {
  switch (sub) {
    case Subcommand::Steady: return "steady";
    case Subcommand::Stability: return "stability";
    case Subcommand::Spectrum: return "spectrum";
    case Subcommand::Route: return "route";
    case Subcommand::Reproduce: return "reproduce";
    case Subcommand::Sweep: return "sweep";
  }
  return "steady";
}

std::vector<SweepPoint> sweep_points(const std::vector<SweepAxis>& axes) {
  std::vector<SweepPoint> points{SweepPoint{}};
  for (const SweepAxis& axis : axes) {
    std::vector<SweepPoint> next;
    next.reserve(points.size() * axis.values.size());
    for (const SweepPoint& p : points) {
      for (double v : axis.values) {
        SweepPoint q = p;
        q.emplace_back(axis.name, v);
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  return points;
}

namespace {

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

void report_warnings(const DriftMatrix& m, std::ostream& err) {
  for (const std::string& w : m.warnings) {
    err << "warning kind=RwaValidity message=" << one_line(w) << '\n';
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json grid_json(const NuGrid& grid) {
  return {{"min", grid.min}, {"max", grid.max}, {"count", grid.count}};
}

DriftMatrix stable_drift(const ModelParams& params, const DriveParams& drive, CaseTag which,
                         std::ostream& err) {
  DriftMatrix m = drift_matrix(params, drive, which);
  report_warnings(m, err);
  const StabilityReport report = assess_stability(m);
  if (!report.stable()) {
    std::ostringstream msg;
    msg << "drift matrix is unstable (max real part " << report.max_real_part << ")";
    throw UnstableSystem(msg.str());
  }
  return m;
}

std::string spectrum_csv(std::span<const SpectrumPoint> points, double omega_m) {
  std::ostringstream os;
  write_spectrum_csv(os, points, omega_m);
  return os.str();
}

void run_steady(const RunConfig& cfg) {
  const ModelParams params = derive_constants(cfg.raw);
  const double eps = cfg.epsilon_p ? *cfg.epsilon_p : pump_for_coupling(params, cfg.drive.G);
  const SteadyState state = solve_steady(params, eps);

  json j = to_json(state);
  j["epsilon_p"] = eps;
  j["G_target"] = cfg.epsilon_p ? json(nullptr) : json(cfg.drive.G);
  j["g0"] = params.g0;
  j["omega_c"] = params.omega_c;
  j["x_zpf"] = params.x_zpf;
  write_text_file(cfg.out_dir / "steady.json", dump(j));

  if (cfg.trajectory.t_end > 0) {
    MeanFieldOptions opts;
    opts.t_end = cfg.trajectory.t_end;
    opts.dt = cfg.trajectory.dt > 0 ? cfg.trajectory.dt : max_mean_field_step(params);
    opts.ramp_time = cfg.trajectory.ramp_time;
    std::ostringstream os;
    write_trajectory_csv(os, integrate_mean_field(params, eps, opts));
    write_text_file(cfg.out_dir / "trajectory.csv", os.str());
  }
}

void run_stability(const RunConfig& cfg, std::ostream& err) {
  const ModelParams params = derive_constants(cfg.raw);
  const DriftMatrix m = drift_matrix(params, cfg.drive, cfg.case_tag);
  report_warnings(m, err);
  json j = to_json(assess_stability(m));
  j["case"] = cfg.case_tag == CaseTag::CaseI ? 1 : 2;
  j["warnings"] = m.warnings;
  write_text_file(cfg.out_dir / "stability.json", dump(j));
}

void run_spectrum(const RunConfig& cfg, std::ostream& err) {
  const ModelParams params = derive_constants(cfg.raw);
  const DriftMatrix m = stable_drift(params, cfg.drive, cfg.case_tag, err);
  const auto points = evaluate_grid(m, cfg.grid, params.Gamma_photon, params.n_th, cfg.workers);
  write_text_file(cfg.out_dir / "spectrum.csv", spectrum_csv(points, params.omega_m));
}

void run_route(const RunConfig& cfg, std::ostream& err) {
  const ModelParams params = derive_constants(cfg.raw);
  report_warnings(drift_matrix(params, cfg.drive, cfg.case_tag), err);
  const RoutingVerdict v =
      route_decision(params, cfg.drive, cfg.case_tag, params.Gamma_photon, params.n_th);
  write_text_file(cfg.out_dir / "route.json", dump(to_json(v)));
}

void run_reproduce(const RunConfig& cfg, std::ostream& err) {
  if (!cfg.figure) throw ValidationError("reproduce needs --figure {fig2,fig3,fig4}");
  const FigureId id = *cfg.figure;
  for (const CurveSpec& spec : figure_curves(id)) {
    report_warnings(drift_matrix(spec.params, spec.drive), err);
  }
  const FigureDataset data = reproduce(id, cfg.workers);

  json curves = json::array();
  for (std::size_t i = 0; i < data.curves.size(); ++i) {
    const Curve& curve = data.curves[i];
    const std::string name = std::string(to_string(id)) + "_curve" + std::to_string(i) + ".csv";
    write_text_file(cfg.out_dir / name,
                    spectrum_csv(curve.points, curve.spec.params.omega_m));
    curves.push_back({{"label", curve.spec.label},
                      {"params", params_json(curve.spec.params.raw(), curve.spec.drive)},
                      {"csv_path", name}});
  }
  const json manifest = {{"figure", to_string(id)}, {"curves", curves}, {"grid", grid_json(data.grid)}};
  write_text_file(cfg.out_dir / (std::string(to_string(id)) + "_manifest.json"), dump(manifest));
}

struct SweepCase {
  std::string label;
  RawParams raw;
  DriveParams drive;
  ModelParams params;
  DriftMatrix drift;
};

void run_sweep(const RunConfig& cfg, std::ostream& err) {
  if (cfg.sweep.empty()) throw ValidationError("sweep needs at least one sweep.<param> axis");
  const std::vector<SweepPoint> points = sweep_points(cfg.sweep);
  const double evaluations =
      static_cast<double>(points.size()) * static_cast<double>(cfg.grid.count);
  if (evaluations > kMaxSweepEvaluations) {
    std::ostringstream msg;
    msg << "sweep would need " << evaluations << " evaluations (limit " << kMaxSweepEvaluations << ")";
    throw ValidationError(msg.str());
  }

  std::vector<SweepCase> cases;
  cases.reserve(points.size());
  for (const SweepPoint& point : points) {
    SweepCase c;
    c.raw = cfg.raw;
    c.drive = cfg.drive;
    for (const auto& [name, value] : point) {
      set_parameter(c.raw, c.drive, name, value);
      c.label += (c.label.empty() ? "" : ",") + name + "=" + format_double(value);
    }
    c.params = derive_constants(c.raw);
    c.drift = stable_drift(c.params, c.drive, cfg.case_tag, err);
    cases.push_back(std::move(c));
  }

  const std::size_t n = cfg.grid.count;
  std::vector<SpectrumPoint> results(cases.size() * n);
  parallel_for(results.size(), cfg.workers, [&](std::size_t k) {
    const SweepCase& c = cases[k / n];
    results[k] = evaluate_point(c.drift, cfg.grid.at(k % n), c.params.Gamma_photon, c.params.n_th);
  });

  json curves = json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "sweep_%04zu.csv", i);
    const std::span<const SpectrumPoint> slice(results.data() + i * n, n);
    write_text_file(cfg.out_dir / name, spectrum_csv(slice, cases[i].params.omega_m));
    curves.push_back({{"label", cases[i].label},
                      {"params", params_json(cases[i].raw, cases[i].drive)},
                      {"csv_path", name}});
  }
  json axes = json::object();
  for (const SweepAxis& a : cfg.sweep) axes[a.name] = a.values;
  const json manifest = {{"figure", "sweep"},
                         {"case", cfg.case_tag == CaseTag::CaseI ? 1 : 2},
                         {"axes", axes},
                         {"curves", curves},
                         {"grid", grid_json(cfg.grid)}};
  write_text_file(cfg.out_dir / "sweep_manifest.json", dump(manifest));
}

int fail(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  err << "error kind=" << kind << " message=" << one_line(message) << '\n';
  return code;
}

}  // namespace

int run(const RunConfig& config, Subcommand sub, std::ostream& err) {
  try {
    switch (sub) {
      case Subcommand::Steady: run_steady(config); break;
      case Subcommand::Stability: run_stability(config, err); break;
      case Subcommand::Spectrum: run_spectrum(config, err); break;
      case Subcommand::Route: run_route(config, err); break;
      case Subcommand::Reproduce: run_reproduce(config, err); break;
      case Subcommand::Sweep: run_sweep(config, err); break;
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    return fail(err, e.kind(), e.what(), kExitValidation);
  } catch (const NumericalError& e) {
    return fail(err, e.kind(), e.what(), kExitNumerical);
  } catch (const Error& e) {
    return fail(err, e.kind(), e.what(), kExitValidation);
  } catch (const fs::filesystem_error& e) {
    return fail(err, "IoError", e.what(), kExitValidation);
  }
}

}  // namespace optorouter::cli
