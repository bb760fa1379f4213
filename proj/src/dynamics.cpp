#include "optorouter/dynamics.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

#include "optorouter/errors.hpp"

namespace optorouter {

using cd = std::complex<double>;

namespace {

constexpr cd I{0.0, 1.0};

NoiseCouplings noise_for(const ModelParams& p) {
  const double optical = std::sqrt(2.0 * p.kappa);
  return {optical, optical, std::sqrt(2.0 * p.gamma_m)};
}

void require_non_negative(double v, const char* name) {
  if (!(v >= 0) || !std::isfinite(v)) {
    throw ValidationError(std::string(name) + " must be finite and >= 0");
  }
}

}  // namespace

DriftMatrix drift_case1(const ModelParams& p, double G) {
  require_non_negative(G, "G");
  const double k2 = 2.0 * p.kappa;
  const double gam = p.gamma_m;

  DriftMatrix d;
  d.case_tag = CaseTag::CaseI;
  d.noise = noise_for(p);
  Matrix4cd& m = d.entries;
  // clang-format off
  m << -k2 - I * p.Delta, -I * G,                   0.0,              -I * G,
       -I * G,            -gam - I * p.omega_m,     -I * G,           0.0,
       0.0,               I * G,                    I * p.Delta - k2, I * G,
       I * G,             0.0,                      I * G,            I * p.omega_m - gam;
  // clang-format on
  return d;
}

DriftMatrix drift_case2(const ModelParams& p, double G, double epsilon_d, double omega_d) {
  require_non_negative(G, "G");
  require_non_negative(epsilon_d, "epsilon_d");
  require_non_negative(omega_d, "omega_d");
  const double k2 = 2.0 * p.kappa;
  const double gam = p.gamma_m;

  DriftMatrix d;
  d.case_tag = CaseTag::CaseII;
  d.delta_small = p.Delta - omega_d;
  d.Delta_m = p.omega_m - omega_d;
  d.noise = noise_for(p);
  const double delta = d.delta_small;
  const double dm = d.Delta_m;
  const double e2 = 2.0 * epsilon_d;
  Matrix4cd& m = d.entries;
  // clang-format off
  m << -k2 - I * delta, -I * G,          0.0,              0.0,
       -I * G,          -gam - I * dm,   0.0,              e2,
       0.0,             0.0,             I * delta - k2,   I * G,
       0.0,             e2,              I * G,            I * dm - gam;
  // clang-format on

  if (2.0 * omega_d < 10.0 * std::max(G, k2)) {
    std::ostringstream msg;
    msg << "rotating-wave approximation questionable: 2 omega_d = " << 2.0 * omega_d
        << " < 10 max(G, 2 kappa) = " << 10.0 * std::max(G, k2);
    d.warnings.push_back(msg.str());
  }
  return d;
}

DriftMatrix drift_matrix(const ModelParams& params, const DriveParams& drive) {
  return drift_matrix(params, drive, drive.case_tag());
}

DriftMatrix drift_matrix(const ModelParams& params, const DriveParams& drive, CaseTag which) {
  validate(drive);
  if (which == CaseTag::CaseI) {
    if (drive.epsilon_d > 0) throw ValidationError("case I requires epsilon_d = 0");
    return drift_case1(params, drive.G);
  }
  return drift_case2(params, drive.G, drive.epsilon_d, drive.omega_d);
}

std::array<cd, 5> characteristic_polynomial(const Matrix4cd& a) {
  constexpr int n = 4;
  std::array<cd, 5> c{};
  c[0] = 1.0;
  Matrix4cd mk = Matrix4cd::Identity();
  for (int k = 1; k <= n; ++k) {
    const Matrix4cd amk = a * mk;
    c[k] = -amk.trace() / static_cast<double>(k);
    mk = amk + c[k] * Matrix4cd::Identity();
  }
  return c;
}

double char_poly_imaginary_residue(const Matrix4cd& m) {
  const double s = m.cwiseAbs().rowwise().sum().maxCoeff();
  if (s == 0) return 0.0;
  const auto c = characteristic_polynomial(m);
  double worst = 0;
  double sk = 1;
  for (std::size_t k = 1; k < c.size(); ++k) {
    sk *= s;
    worst = std::max(worst, std::abs(c[k].imag()) / sk);
  }
  return worst;
}

RouthResult routh_hurwitz(std::span<const double> coefficients) {
  RouthResult out;
  if (coefficients.empty() || coefficients.front() == 0) {
    throw ValidationError("Routh-Hurwitz needs a non-zero leading coefficient");
  }
  const std::size_t n = coefficients.size() - 1;
  if (n == 0) {
    out.stable = true;
    return out;
  }

  // Rescale lambda = s mu so that the monic coefficients satisfy |b_k| <= 1.
  const double lead = coefficients.front();
  double s = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    s = std::max(s, std::pow(std::abs(coefficients[k] / lead), 1.0 / static_cast<double>(k)));
  }
  if (s == 0) s = 1;
  std::vector<double> b(n + 1);
  double sk = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    b[k] = coefficients[k] / lead / sk;
    sk *= s;
  }

  const std::size_t width = n / 2 + 1;
  std::vector<std::vector<double>> rows(n + 1, std::vector<double>(width + 1, 0.0));
  for (std::size_t k = 0; k <= n; ++k) rows[k % 2][k / 2] = b[k];

  auto row_scale = [&](const std::vector<double>& r) {
    double m = 0;
    for (double v : r) m = std::max(m, std::abs(v));
    return m;
  };

  for (std::size_t i = 1; i <= n; ++i) {
    // `mag` bounds the terms that cancel in this row, so the zero test is
    // relative to them and not to an earlier, possibly epsilon-inflated row.
    double mag = std::max(row_scale(rows[0]), row_scale(rows[1]));
    if (i >= 2) {
      const auto& up = rows[i - 2];
      const auto& prev = rows[i - 1];
      mag = 0;
      for (std::size_t j = 0; j < width; ++j) {
        rows[i][j] = (prev[0] * up[j + 1] - up[0] * prev[j + 1]) / prev[0];
        mag = std::max(mag, std::abs(up[j + 1]) + std::abs(up[0] * prev[j + 1] / prev[0]));
      }
    }
    const double zero_tol = 64.0 * DBL_EPSILON * mag;
    if (row_scale(rows[i]) <= zero_tol) {
      // Whole row vanished: continue with the derivative of the auxiliary
      // polynomial built from the row above. Roots lie symmetric about the origin.
      out.zero_pivot = true;
      const std::size_t degree = n - (i - 1);
      for (std::size_t j = 0; j < width; ++j) {
        const double power = static_cast<double>(degree) - 2.0 * static_cast<double>(j);
        rows[i][j] = power > 0 ? rows[i - 1][j] * power : 0.0;
      }
    }
    if (std::abs(rows[i][0]) <= zero_tol) {
      out.zero_pivot = true;
      rows[i][0] = 1e-30 * std::max(row_scale(rows[i]), row_scale(rows[i - 1]));
    }
  }

  out.first_column.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out.first_column.push_back(rows[i][0]);
  for (std::size_t i = 1; i <= n; ++i) {
    if ((out.first_column[i] > 0) != (out.first_column[i - 1] > 0)) ++out.sign_changes;
  }
  out.stable = !out.zero_pivot &&
               std::all_of(out.first_column.begin(), out.first_column.end(),
                           [](double v) { return v > 0; });
  return out;
}

StabilityReport assess_stability(const DriftMatrix& m) {
  const double residue = char_poly_imaginary_residue(m.entries);
  if (residue > 1e-8) {
    std::ostringstream msg;
    msg << "characteristic polynomial has relative imaginary residue " << residue;
    throw ComplexCharPoly(msg.str());
  }

  StabilityReport r;
  const auto cp = characteristic_polynomial(m.entries);
  for (std::size_t k = 0; k < cp.size(); ++k) r.char_poly[k] = cp[k].real();
  r.routh_hurwitz_pass = routh_hurwitz(r.char_poly).stable;

  Eigen::ComplexEigenSolver<Matrix4cd> solver(m.entries, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("EigenFailure", "complex eigensolver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  for (int i = 0; i < 4; ++i) r.eigenvalues[static_cast<std::size_t>(i)] = ev(i);
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), [](cd x, cd y) {
    return x.imag() != y.imag() ? x.imag() < y.imag() : x.real() < y.real();
  });
  r.max_real_part = ev.real().maxCoeff();

  r.consistent = r.stable() == r.routh_hurwitz_pass;
  if (!r.consistent) {
    std::ostringstream msg;
    msg << "Routh-Hurwitz verdict (" << (r.routh_hurwitz_pass ? "stable" : "unstable")
        << ") disagrees with eigenvalues (max real part " << r.max_real_part
        << "); eigenvalue verdict used";
    r.diagnostic = msg.str();
  }
  return r;
}

}  // namespace optorouter
