#include "optorouter/cli/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include "optorouter/errors.hpp"

namespace optorouter::cli {

using nlohmann::json;

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw Error("FormatError", "cannot format double");
  return std::string(buf.data(), ptr);
}

const std::string& spectrum_csv_header() {
  static const std::string header =
      "nu_over_omega_m,F1c,F1d,F3,F4,F5,F6,S_in,S_c_out,S_d_out,signal_c,signal_d,thermal,"
      "vacuum_total";
  return header;
}

void write_spectrum_csv(std::ostream& out, std::span<const SpectrumPoint> points, double omega_m) {
  out << spectrum_csv_header() << '\n';
  for (const SpectrumPoint& pt : points) {
    const ScatterProbabilities& p = pt.probs;
    const SpectrumDecomposition& s = pt.decomposition;
    const double vacuum = s.vacuum_c_back + s.vacuum_d + s.mech_vacuum;
    const std::array<double, 14> row{pt.row.nu / omega_m, p.F1_c, p.F1_d, p.F3, p.F4, p.F5, p.F6,
                                     s.S_in_at_nu, s.S_c_out, s.S_d_out, s.signal_c, s.signal_d,
                                     s.thermal, vacuum};
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t,alpha_re,alpha_im,beta_re,beta_im\n";
  for (const MeanFieldSample& s : trajectory) {
    out << format_double(s.t) << ',' << format_double(s.alpha.real()) << ','
        << format_double(s.alpha.imag()) << ',' << format_double(s.beta.real()) << ','
        << format_double(s.beta.imag()) << '\n';
  }
}

namespace {

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

// JSON has no infinity; an unbounded ratio is written as null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const StabilityReport& report) {
  json eig = json::array();
  for (const auto& z : report.eigenvalues) eig.push_back(complex_json(z));
  return {
      {"eigenvalues", eig},
      {"max_real_part", report.max_real_part},
      {"routh_hurwitz_pass", report.routh_hurwitz_pass},
      {"consistent", report.consistent},
      {"stable", report.stable()},
      {"char_poly", report.char_poly},
      {"diagnostic", report.diagnostic},
  };
}

json to_json(const RoutingVerdict& v) {
  const ScatterProbabilities& p = v.probs;
  const SpectrumDecomposition& s = v.decomposition;
  return {
      {"decision", to_string(v.decision)},
      {"case", v.case_tag == CaseTag::CaseI ? 1 : 2},
      {"contrast", v.contrast},
      {"snr_c", finite_or_null(v.snr_c)},
      {"snr_d", finite_or_null(v.snr_d)},
      {"operating_nu", v.operating_nu},
      {"Gamma", v.Gamma},
      {"n_th", v.n_th},
      {"probabilities",
       {{"F1c", p.F1_c}, {"F1d", p.F1_d}, {"F3", p.F3}, {"F4", p.F4}, {"F5", p.F5}, {"F6", p.F6}}},
      {"spectrum",
       {{"S_in", s.S_in_at_nu},
        {"signal_c", s.signal_c},
        {"signal_d", s.signal_d},
        {"thermal", s.thermal},
        {"vacuum_c_back", s.vacuum_c_back},
        {"vacuum_d", s.vacuum_d},
        {"mech_vacuum", s.mech_vacuum},
        {"S_c_out", s.S_c_out},
        {"S_d_out", s.S_d_out}}},
  };
}

json to_json(const SteadyState& state) {
  return {
      {"alpha", complex_json(state.alpha)},
      {"beta", complex_json(state.beta)},
      {"G_eff", state.G_eff},
      {"Delta_prime", state.Delta_prime},
      {"residual", state.residual},
  };
}

json params_json(const RawParams& raw, const DriveParams& drive) {
  return {
      {"wavelength_lambda", raw.wavelength_lambda},
      {"cavity_length_L", raw.cavity_length_L},
      {"mirror_mass_m", raw.mirror_mass_m},
      {"omega_m", raw.omega_m},
      {"gamma_m", raw.gamma_m},
      {"kappa", raw.kappa},
      {"Delta", raw.Delta},
      {"n_th", raw.n_th},
      {"Gamma_photon", raw.Gamma_photon},
      {"G", drive.G},
      {"epsilon_d", drive.epsilon_d},
      {"omega_d", drive.omega_d},
  };
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("IoError", "cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw Error("IoError", "write failed for '" + path.string() + "'");
}

}  // namespace optorouter::cli
