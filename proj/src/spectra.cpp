#include "optorouter/spectra.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <sstream>

#include "optorouter/errors.hpp"
#include "optorouter/parallel.hpp"

namespace optorouter {

using cd = std::complex<double>;
using Vector4cd = Eigen::Matrix<cd, 4, 1>;

namespace {

constexpr cd I{0.0, 1.0};

Matrix4cd shifted(const DriftMatrix& m, double nu) {
  return m.entries + I * nu * Matrix4cd::Identity();
}

}  // namespace

TransferRow transfer_row(const DriftMatrix& m, double nu) {
  const Matrix4cd a = shifted(m, nu);
  const Eigen::PartialPivLU<Matrix4cd> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 64.0 * DBL_EPSILON)) {
    std::ostringstream msg;
    msg << "M + i nu I is singular at nu = " << nu << " (rcond " << rcond << ")";
    throw SingularMatrix(msg.str());
  }

  // Column j is the response to a unit input in slot j, scaled by its coupling.
  const Eigen::Vector4d coupling(m.noise.optical_c, m.noise.mechanical, m.noise.optical_c,
                                 m.noise.mechanical);
  const Matrix4cd b = coupling.cast<cd>().asDiagonal();
  const Matrix4cd x = lu.solve(-b);

  TransferRow row;
  row.nu = nu;
  const double a_norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  for (int j = 0; j < 4; ++j) {
    const double r = (a * x.col(j) + b.col(j)).cwiseAbs().maxCoeff();
    const double scale = a_norm * x.col(j).cwiseAbs().maxCoeff() + b.col(j).cwiseAbs().maxCoeff();
    row.solve_residual = std::max(row.solve_residual, r / scale);
  }
  if (!x.allFinite()) throw SingularMatrix("non-finite transfer coefficients");

  // Both optical ports inject into slot 0 (and slot 2) with the same coupling,
  // so f_1 == f_2 and f_4 == f_5 identically.
  row.f = {x(0, 0), x(0, 0), x(0, 1), x(0, 2), x(0, 2), x(0, 3)};
  for (std::size_t j = 0; j < row.f.size(); ++j) row.f_primed[j] = m.noise.optical_c * row.f[j];
  return row;
}

PortCoefficients port_coefficients(const TransferRow& row) {
  PortCoefficients p{row.f_primed, row.f_primed};
  p.c[0] -= 1.0;
  p.d[1] -= 1.0;
  return p;
}

ScatterProbabilities probabilities(const PortCoefficients& ports) {
  const auto& c = ports.c;
  ScatterProbabilities s;
  s.F1_c = std::norm(c[0]);
  s.F1_d = std::norm(ports.d[0]);
  s.F3 = std::norm(c[2]) + std::norm(c[5]);
  s.F4 = std::norm(c[3]);
  s.F5 = std::norm(c[4]);
  s.F6 = std::norm(c[5]);
  return s;
}

double input_spectrum(double Gamma, double nu) {
  if (!(Gamma > 0)) throw ValidationError("photon linewidth Gamma must be > 0");
  return Gamma / std::numbers::pi / (nu * nu + Gamma * Gamma);
}

SpectrumDecomposition output_spectra(const ScatterProbabilities& probs, double Gamma,
                                     double n_th, double nu) {
  if (!(n_th >= 0)) throw ValidationError("n_th must be >= 0");
  SpectrumDecomposition s;
  s.nu = nu;
  s.S_in_at_nu = input_spectrum(Gamma, nu);
  s.S_in_at_minus_nu = input_spectrum(Gamma, -nu);
  s.signal_c = probs.F1_c * s.S_in_at_nu;
  s.signal_d = probs.F1_d * s.S_in_at_nu;
  s.thermal = probs.F3 * n_th;
  s.vacuum_c_back = probs.F4 * (s.S_in_at_minus_nu + 1.0);
  s.vacuum_d = probs.F5;
  s.mech_vacuum = probs.F6;
  const double noise = s.noise_floor();
  s.S_c_out = s.signal_c + noise;
  s.S_d_out = s.signal_d + noise;
  return s;
}

cd classical_probe_oracle(const DriftMatrix& m, double nu, ProbePort port,
                          const ProbeOptions& options) {
  const Eigen::ComplexEigenSolver<Matrix4cd> solver(m.entries, false);
  const auto& lambda = solver.eigenvalues();
  if (!(lambda.real().maxCoeff() < 0)) {
    throw UnstableSystem("probe oracle needs a stable drift matrix");
  }
  const double slowest_rate = lambda.real().cwiseAbs().minCoeff();
  const double damping_time = 1.0 / slowest_rate;

  // In the frame co-rotating with the tone the drive is constant:
  //   du/dt = (M + i nu) u + s.
  const Matrix4cd a = shifted(m, nu);
  double fastest = 0;
  for (int i = 0; i < 4; ++i) fastest = std::max(fastest, std::abs(lambda(i) + I * nu));
  const double h = 1.0 / fastest;

  Vector4cd source = Vector4cd::Zero();
  if (port == ProbePort::Optical) {
    source(0) = m.noise.optical_c;
  } else {
    source(1) = m.noise.mechanical;
  }

  // Exact RK4 propagator for a linear autonomous system: u <- P u + q.
  const Matrix4cd ha = h * a;
  const Matrix4cd id = Matrix4cd::Identity();
  const Matrix4cd p = id + ha * (id + ha * (id / 2.0 + ha * (id / 6.0 + ha / 24.0)));
  const Vector4cd q = h * (id + ha * (id / 2.0 + ha * (id / 6.0 + ha / 24.0))) * source;

  // Integrate the full span, then check that the last window no longer moves
  // the cavity amplitude. Every step of the window counts, not only its ends,
  // so a beating transient cannot pass by coincidence.
  const auto steps_per_window = static_cast<std::size_t>(std::ceil(damping_time / h));
  const int windows = std::max(2, static_cast<int>(std::ceil(options.max_damping_times)));
  Vector4cd u = Vector4cd::Zero();
  double excursion = 0;
  for (int w = 1; w <= windows; ++w) {
    const cd start = u(0);
    excursion = 0;
    for (std::size_t k = 0; k < steps_per_window; ++k) {
      u = p * u + q;
      excursion = std::max(excursion, std::abs(u(0) - start));
    }
  }
  if (excursion <= options.tolerance * std::abs(u(0))) return u(0);

  std::ostringstream msg;
  msg << "probe response still changing after " << options.max_damping_times
      << " damping times (nu = " << nu << ", last-window excursion " << excursion / std::abs(u(0)) << ")";
  throw NotConverged(msg.str());
}

double NuGrid::at(std::size_t i) const {
  if (count < 2) return min;
  if (i + 1 == count) return max;
  const double t = static_cast<double>(i) / static_cast<double>(count - 1);
  return min + t * (max - min);
}

SpectrumPoint evaluate_point(const DriftMatrix& m, double nu, double Gamma, double n_th) {
  SpectrumPoint pt;
  pt.row = transfer_row(m, nu);
  pt.probs = probabilities(port_coefficients(pt.row));
  pt.decomposition = output_spectra(pt.probs, Gamma, n_th, nu);
  return pt;
}

std::vector<SpectrumPoint> evaluate_grid(const DriftMatrix& m, const NuGrid& grid, double Gamma,
                                         double n_th, unsigned workers) {
  if (grid.count < 2) throw ValidationError("nu grid needs at least 2 points");
  std::vector<SpectrumPoint> out(grid.count);
  parallel_for(grid.count, workers,
               [&](std::size_t i) { out[i] = evaluate_point(m, grid.at(i), Gamma, n_th); });
  return out;
}

}  // namespace optorouter
