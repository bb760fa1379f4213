#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "optorouter/dynamics.hpp"
#include "optorouter/errors.hpp"
#include "support.hpp"

using namespace optorouter;
using cd = std::complex<double>;
using testing::rel_diff;

namespace {

constexpr cd I{0, 1};

std::vector<cd> sorted_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  std::vector<cd> ev(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  std::sort(ev.begin(), ev.end(), [](cd a, cd b) {
    return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
  });
  return ev;
}

// Random but physically shaped parameter draw; some are unstable.
struct Draw {
  ModelParams params;
  DriveParams drive;
};

Draw random_draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RawParams raw = reference_preset().raw;
  const double wm = raw.omega_m;
  raw.kappa = wm * (0.01 + 0.3 * u(rng));
  raw.gamma_m = wm * std::pow(10.0, -6 + 5 * u(rng));
  raw.Delta = wm * (0.2 + 1.6 * u(rng));
  Draw d{derive_constants(raw), {}};
  d.drive.G = wm * 0.8 * u(rng);
  if (u(rng) < 0.5) {
    d.drive.omega_d = wm * (0.5 + u(rng));
    d.drive.epsilon_d = wm * 0.5 * u(rng);
  }
  return d;
}

}  // namespace

TEST_CASE("uncoupled drift matrix has the bare mode eigenvalues") {
  const ModelParams p = testing::preset_params();
  const DriftMatrix m = drift_case1(p, 0.0);
  const StabilityReport r = assess_stability(m);
  std::vector<cd> expected{-2 * p.kappa - I * p.Delta, -p.gamma_m - I * p.omega_m,
                           -2 * p.kappa + I * p.Delta, -p.gamma_m + I * p.omega_m};
  std::vector<cd> got(r.eigenvalues.begin(), r.eigenvalues.end());
  auto by_value = [](cd a, cd b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); };
  std::sort(expected.begin(), expected.end(), by_value);
  std::sort(got.begin(), got.end(), by_value);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(got[k] - expected[k]) <= 1e-9 * p.omega_m);
  CHECK(r.stable());
  CHECK(r.routh_hurwitz_pass);
  CHECK(r.consistent);
  CHECK(r.max_real_part == doctest::Approx(-p.gamma_m).epsilon(1e-6));
}

TEST_CASE("case-I couplings, counter-rotating terms included") {
  const ModelParams p = testing::preset_params();
  const double G = 0.2 * p.omega_m;
  const DriftMatrix m = drift_case1(p, G);
  const Matrix4cd& e = m.entries;
  CHECK(m.case_tag == CaseTag::CaseI);
  CHECK(e(0, 0) == -2 * p.kappa - I * p.Delta);
  CHECK(e(1, 1) == -p.gamma_m - I * p.omega_m);
  CHECK(e(2, 2) == -2 * p.kappa + I * p.Delta);
  CHECK(e(3, 3) == -p.gamma_m + I * p.omega_m);
  CHECK(e(0, 1) == -I * G);
  CHECK(e(0, 3) == -I * G);
  CHECK(e(1, 0) == -I * G);
  CHECK(e(1, 2) == -I * G);
  CHECK(e(2, 1) == I * G);
  CHECK(e(2, 3) == I * G);
  CHECK(e(3, 0) == I * G);
  CHECK(e(3, 2) == I * G);
  CHECK(e(0, 2) == cd{});
  CHECK(e(1, 3) == cd{});
  CHECK(m.noise.optical_c == doctest::Approx(std::sqrt(2 * p.kappa)));
  CHECK(m.noise.optical_d == doctest::Approx(std::sqrt(2 * p.kappa)));
  CHECK(m.noise.mechanical == doctest::Approx(std::sqrt(2 * p.gamma_m)));
  CHECK(m.warnings.empty());
}

TEST_CASE("case-II matrix in the modulation frame") {
  const ReferencePreset preset = reference_preset(CaseTag::CaseII);
  const ModelParams p = derive_constants(preset.raw);
  const DriveParams& d = preset.drive;
  const DriftMatrix m = drift_case2(p, d.G, d.epsilon_d, d.omega_d);
  CHECK(m.case_tag == CaseTag::CaseII);
  CHECK(m.Delta_m == doctest::Approx(0.2 * p.omega_m));
  CHECK(m.Delta_m == doctest::Approx(2 * p.kappa));
  CHECK(m.delta_small == doctest::Approx(p.Delta - d.omega_d));
  CHECK(m.entries(1, 3).real() == doctest::Approx(39.9).epsilon(1e-3));
  CHECK(m.entries(1, 3) == m.entries(3, 1));
  CHECK(m.entries(1, 3) == cd(2 * d.epsilon_d, 0));
  CHECK(m.entries(0, 3) == cd{});
  CHECK(m.entries(1, 2) == cd{});
  CHECK(m.entries(0, 0) == -2 * p.kappa - I * m.delta_small);
  CHECK(m.entries(1, 1) == -p.gamma_m - I * m.Delta_m);
  // 2 omega_d = 1.6 omega_m is below 10 max(G, 2 kappa) = 2 omega_m.
  CHECK(m.warnings.size() == 1);
  CHECK(drift_matrix(p, d).case_tag == CaseTag::CaseII);
}

TEST_CASE("case II without modulation is the beam-splitter part of case I") {
  const ModelParams p = testing::preset_params();
  const double G = 0.15 * p.omega_m;
  DriftMatrix beam_splitter = drift_case1(p, G);
  for (auto [r, c] : {std::pair{0, 3}, {1, 2}, {2, 1}, {3, 0}}) beam_splitter.entries(r, c) = 0;

  const DriftMatrix reduced = drift_case2(p, G, 0.0, 0.0);
  CHECK((reduced.entries - beam_splitter.entries).norm() == 0);

  // With omega_d > 0 the rotating frame shifts the (a, b) block by +i omega_d
  // and the conjugate block by -i omega_d.
  const double wd = 0.7 * p.omega_m;
  const DriftMatrix shifted = drift_case2(p, G, 0.0, wd);
  Eigen::MatrixXcd upper = beam_splitter.entries.topLeftCorner<2, 2>();
  Eigen::MatrixXcd lower = beam_splitter.entries.bottomRightCorner<2, 2>();
  std::vector<cd> expected;
  for (cd z : sorted_eigenvalues(upper)) expected.push_back(z + I * wd);
  for (cd z : sorted_eigenvalues(lower)) expected.push_back(z - I * wd);
  std::sort(expected.begin(), expected.end(), [](cd a, cd b) {
    return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
  });
  const std::vector<cd> got = sorted_eigenvalues(shifted.entries);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(got[k] - expected[k]) <= 1e-9 * p.omega_m);
}

TEST_CASE("explicit case selection") {
  const ModelParams p = testing::preset_params();
  const DriveParams modulated{0.1 * p.omega_m, 10.0, 0.8 * p.omega_m};
  CHECK_THROWS_AS(drift_matrix(p, modulated, CaseTag::CaseI), ValidationError);
  const DriveParams plain{0.1 * p.omega_m, 0.0, 0.0};
  CHECK(drift_matrix(p, plain).case_tag == CaseTag::CaseI);
  CHECK(drift_matrix(p, DriveParams{0.1 * p.omega_m, 0.0, 0.9 * p.omega_m}, CaseTag::CaseII).case_tag ==
        CaseTag::CaseII);
}

TEST_CASE("reference couplings are stable") {
  const ModelParams p = testing::preset_params();
  for (double ratio : {1e-4, 0.1, 0.2}) {
    CAPTURE(ratio);
    const StabilityReport r = assess_stability(drift_case1(p, ratio * p.omega_m));
    CHECK(r.stable());
    CHECK(r.routh_hurwitz_pass);
    CHECK(r.consistent);
    CHECK(r.diagnostic.empty());
  }
  for (double ratio : {0.8, 0.85, 0.9, 1.0}) {
    CAPTURE(ratio);
    const ReferencePreset preset = reference_preset(CaseTag::CaseII);
    const StabilityReport r =
        assess_stability(drift_case2(p, preset.drive.G, preset.drive.epsilon_d, ratio * p.omega_m));
    CHECK(r.stable());
    CHECK(r.routh_hurwitz_pass);
  }
}

TEST_CASE("strong coupling destabilises case I") {
  const ModelParams p = testing::preset_params();
  const StabilityReport r = assess_stability(drift_case1(p, 0.6 * p.omega_m));
  CHECK_FALSE(r.stable());
  CHECK_FALSE(r.routh_hurwitz_pass);
  CHECK(r.consistent);
}

TEST_CASE("characteristic polynomial") {
  SUBCASE("diagonal matrix") {
    Matrix4cd m = Matrix4cd::Zero();
    m.diagonal() << 1.0, 2.0, 3.0, 4.0;
    const auto c = characteristic_polynomial(m);
    // (x-1)(x-2)(x-3)(x-4) = x^4 - 10x^3 + 35x^2 - 50x + 24
    const double want[] = {1, -10, 35, -50, 24};
    for (int k = 0; k < 5; ++k) CHECK(std::abs(c[k] - want[k]) < 1e-12);
  }
  SUBCASE("roots are the eigenvalues") {
    const ModelParams p = testing::preset_params();
    const DriftMatrix m = drift_case1(p, 0.1 * p.omega_m);
    const auto c = characteristic_polynomial(m.entries);
    for (cd z : sorted_eigenvalues(m.entries)) {
      const cd value = (((c[0] * z + c[1]) * z + c[2]) * z + c[3]) * z + c[4];
      const double scale = std::pow(std::abs(z), 4);
      CHECK(std::abs(value) / scale < 1e-9);
    }
  }
  SUBCASE("real for every drift matrix") {
    std::mt19937_64 rng(7);
    for (int n = 0; n < 200; ++n) {
      const Draw d = random_draw(rng);
      CHECK(char_poly_imaginary_residue(drift_matrix(d.params, d.drive).entries) <= 1e-10);
    }
  }
  SUBCASE("broken conjugate structure is caught") {
    DriftMatrix m = drift_case1(testing::preset_params(), 1e4);
    m.entries(0, 0) += cd(0, 1e5);
    CHECK(char_poly_imaginary_residue(m.entries) > 1e-8);
    CHECK_THROWS_AS(assess_stability(m), ComplexCharPoly);
  }
}

TEST_CASE("Routh-Hurwitz on known quartics") {
  auto expand = [](std::vector<double> roots) {
    std::vector<double> c{1.0};
    for (double r : roots) {
      std::vector<double> next(c.size() + 1, 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i] += c[i];
        next[i + 1] -= r * c[i];
      }
      c = next;
    }
    return c;
  };
  SUBCASE("all roots in the left half-plane") {
    const auto c = expand({-1, -2, -3, -4});
    const RouthResult r = routh_hurwitz(c);
    CHECK(r.stable);
    CHECK(r.sign_changes == 0);
    CHECK_FALSE(r.zero_pivot);
  }
  SUBCASE("sign changes count right-half-plane roots") {
    CHECK(routh_hurwitz(expand({1, -2, -3, -4})).sign_changes == 1);
    CHECK(routh_hurwitz(expand({1, 2, -3, -4})).sign_changes == 2);
    CHECK(routh_hurwitz(expand({1, 2, 3, -4})).sign_changes == 3);
    CHECK_FALSE(routh_hurwitz(expand({1, 2, 3, 4})).stable);
  }
  SUBCASE("imaginary-axis roots are not stable") {
    // (x^2 + 1)(x + 1)^2
    const double c[] = {1, 2, 2, 2, 1};
    const RouthResult r = routh_hurwitz(c);
    CHECK_FALSE(r.stable);
  }
  SUBCASE("vanishing pivot") {
    // x^4 + x^3 + 2x^2 + 2x + 3 has a zero in the third row.
    const double c[] = {1, 1, 2, 2, 3};
    const RouthResult r = routh_hurwitz(c);
    CHECK(r.zero_pivot);
    CHECK_FALSE(r.stable);
    CHECK(r.sign_changes == 2);
  }
  SUBCASE("scale invariance") {
    // Roots at the mechanical scale, coefficients spanning 24 decades.
    const auto c = expand({-1e-1, -5e5, -8e5, -1e6});
    CHECK(routh_hurwitz(c).stable);
  }
}

TEST_CASE("eigenvalue and Routh-Hurwitz verdicts agree on random draws") {
  std::mt19937_64 rng(2024);
  int stable = 0;
  int unstable = 0;
  for (int n = 0; n < 500; ++n) {
    const Draw d = random_draw(rng);
    const StabilityReport r = assess_stability(drift_matrix(d.params, d.drive));
    // Verdicts within rounding of the imaginary axis are not meaningful.
    if (std::abs(r.max_real_part) < 1e-6 * d.params.omega_m) continue;
    CHECK(r.consistent);
    (r.stable() ? stable : unstable)++;
  }
  CHECK(stable > 50);
  CHECK(unstable > 50);
}

TEST_CASE("more damping never destabilises") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int n = 0; n < 300; ++n) {
    const Draw d = random_draw(rng);
    if (!assess_stability(drift_matrix(d.params, d.drive)).stable()) continue;
    for (double factor : {1.5, 3.0}) {
      RawParams more_gamma = d.params.raw();
      more_gamma.gamma_m *= factor;
      CHECK(assess_stability(drift_matrix(derive_constants(more_gamma), d.drive)).stable());
      // Cavity damping only in the unmodulated case; see the next test.
      if (d.drive.case_tag() == CaseTag::CaseI) {
        RawParams more_kappa = d.params.raw();
        more_kappa.kappa = std::min(more_kappa.kappa * factor, 0.99 * more_kappa.omega_m);
        CHECK(assess_stability(drift_matrix(derive_constants(more_kappa), d.drive)).stable());
      }
    }
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("parametric gain held off by optical damping alone") {
  // The mirror's own damping is far below the modulation gain, so stability
  // rests on the cavity-induced damping, which weakens as kappa grows.
  RawParams raw = reference_preset().raw;
  const double wm = raw.omega_m;
  raw.kappa = 0.067 * wm;
  raw.gamma_m = 1.95e-6 * wm;
  raw.Delta = 1.477 * wm;
  const DriveParams d{0.325 * wm, 0.094 * wm, 1.006 * wm};
  CHECK(assess_stability(drift_matrix(derive_constants(raw), d)).stable());
  raw.kappa *= 3;
  CHECK_FALSE(assess_stability(drift_matrix(derive_constants(raw), d)).stable());
}
