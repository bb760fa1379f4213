#pragma once

// Linearised fluctuation dynamics dv/dt = M v + noise over the basis
// v = (a, b, a^dagger, b^dagger), and stability certification.

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "optorouter/model.hpp"

namespace optorouter {

using Matrix4cd = Eigen::Matrix<std::complex<double>, 4, 4>;

/// Noise injection strengths: each optical port enters slots 0/2 with
/// sqrt(2 kappa), the mechanical bath enters slots 1/3 with sqrt(2 gamma).
struct NoiseCouplings {
  double optical_c = 0;
  double optical_d = 0;
  double mechanical = 0;
};

struct DriftMatrix {
  Matrix4cd entries = Matrix4cd::Zero();
  CaseTag case_tag = CaseTag::CaseI;
  double delta_small = 0;  // Delta - omega_d (case II)
  double Delta_m = 0;      // omega_m - omega_d (case II)
  NoiseCouplings noise;
  std::vector<std::string> warnings;
};

/// Unmodulated case, counter-rotating couplings included.
DriftMatrix drift_case1(const ModelParams& params, double G);

/// Modulated case in the frame rotating at omega_d, after the rotating-wave
/// approximation. Adds a warning when 2 omega_d < 10 max(G, 2 kappa).
DriftMatrix drift_case2(const ModelParams& params, double G, double epsilon_d, double omega_d);

/// Dispatches on drive.case_tag().
DriftMatrix drift_matrix(const ModelParams& params, const DriveParams& drive);

/// Explicit case selection; case I rejects epsilon_d > 0.
DriftMatrix drift_matrix(const ModelParams& params, const DriveParams& drive, CaseTag which);

/// Monic characteristic polynomial det(lambda I - M), coefficients from the
/// leading term down: c[0] = 1, c[4] = det(-M). Faddeev-LeVerrier.
std::array<std::complex<double>, 5> characteristic_polynomial(const Matrix4cd& m);

/// Largest |Im c_k| / s^k over the coefficients, with s the infinity norm of m.
/// Zero for matrices whose spectrum is closed under conjugation.
double char_poly_imaginary_residue(const Matrix4cd& m);

struct RouthResult {
  bool stable = false;
  int sign_changes = 0;           // roots in the open right half-plane when no pivot vanished
  bool zero_pivot = false;        // an epsilon substitution was needed
  std::vector<double> first_column;
};

/// Routh array for a real polynomial given from the leading coefficient down.
/// The variable is rescaled so the coefficients are O(1); vanishing pivots are
/// replaced by 1e-30 times the row scale. A polynomial is reported stable only
/// when every first-column entry is strictly positive with no substitution.
RouthResult routh_hurwitz(std::span<const double> coefficients);

struct StabilityReport {
  std::array<std::complex<double>, 4> eigenvalues{};
  double max_real_part = 0;
  bool routh_hurwitz_pass = false;
  bool consistent = false;
  std::array<double, 5> char_poly{};
  std::string diagnostic;  // non-empty when the two verdicts disagree

  /// The eigenvalue verdict, which wins on disagreement.
  bool stable() const { return max_real_part < 0; }
};

/// Eigenvalues from a dense complex eigensolver and a Routh-Hurwitz test on
/// the real quartic. Throws ComplexCharPoly when the characteristic polynomial
/// is not real to 1e-8 relative.
StabilityReport assess_stability(const DriftMatrix& m);

}  // namespace optorouter
