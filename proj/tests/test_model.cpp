#include <doctest.h>

#include "optorouter/errors.hpp"
#include "optorouter/model.hpp"
#include "support.hpp"

using namespace optorouter;
using testing::rel_diff;

TEST_CASE("derived constants of the reference cavity") {
  const ModelParams p = testing::preset_params();
  CHECK(p.omega_c == doctest::Approx(1.787e15).epsilon(1e-3));
  CHECK(p.g0 == doctest::Approx(33.4).epsilon(5e-3));
  // x_zpf = sqrt(hbar / (2 m omega_m))
  CHECK(p.x_zpf == doctest::Approx(std::sqrt(constants::hbar / (2 * 40e-12 * p.omega_m))));
}

TEST_CASE("preset values") {
  const ReferencePreset two = reference_preset(CaseTag::CaseII);
  const double wm = constants::two_pi * 134e3;
  CHECK(two.raw.omega_m == doctest::Approx(wm));
  CHECK(two.raw.kappa == doctest::Approx(0.1 * wm));
  CHECK(two.raw.Delta == doctest::Approx(wm));
  CHECK(two.raw.gamma_m == doctest::Approx(constants::two_pi * 0.76));
  CHECK(two.raw.Gamma_photon == doctest::Approx(0.01 * two.raw.kappa));
  CHECK(two.drive.G == doctest::Approx(0.2 * wm));
  CHECK(two.drive.epsilon_d == doctest::Approx(2.37e-4 * two.raw.kappa));
  CHECK(two.drive.omega_d == doctest::Approx(0.8 * wm));
  CHECK(two.drive.case_tag() == CaseTag::CaseII);

  const ReferencePreset one = reference_preset(CaseTag::CaseI);
  CHECK(one.raw.Gamma_photon == doctest::Approx(wm));
  CHECK(one.drive.epsilon_d == 0);
  CHECK(one.drive.case_tag() == CaseTag::CaseI);
}

TEST_CASE("g0 scales as m^-1/2 and 1/L") {
  const RawParams raw = reference_preset().raw;
  const double g0 = derive_constants(raw).g0;
  for (double s : {0.25, 2.0, 9.0, 1e3}) {
    RawParams heavier = raw;
    heavier.mirror_mass_m *= s;
    CHECK(rel_diff(derive_constants(heavier).g0, g0 / std::sqrt(s)) < 1e-14);
    RawParams longer = raw;
    longer.cavity_length_L *= s;
    CHECK(rel_diff(derive_constants(longer).g0, g0 / s) < 1e-14);
  }
}

TEST_CASE("re-deriving from raw() reproduces identical constants") {
  const ModelParams p = testing::preset_params();
  const ModelParams q = derive_constants(p.raw());
  CHECK(q.omega_c == p.omega_c);
  CHECK(q.x_zpf == p.x_zpf);
  CHECK(q.g0 == p.g0);
}

TEST_CASE("validation rejects unphysical parameters") {
  const RawParams good = reference_preset().raw;
  CHECK_NOTHROW(validate(good));

  auto broken = [&](auto mutate) {
    RawParams r = good;
    mutate(r);
    return r;
  };
  CHECK_THROWS_AS(validate(broken([](RawParams& r) { r.kappa = -1; })), ValidationError);
  CHECK_THROWS_AS(validate(broken([](RawParams& r) { r.mirror_mass_m = 0; })), ValidationError);
  CHECK_THROWS_AS(validate(broken([](RawParams& r) { r.n_th = -0.5; })), ValidationError);
  CHECK_THROWS_AS(validate(broken([](RawParams& r) { r.kappa = r.omega_m; })), ValidationError);
  CHECK_THROWS_AS(validate(broken([](RawParams& r) { r.gamma_m = std::nan(""); })), ValidationError);
  CHECK_THROWS_AS(derive_constants(broken([](RawParams& r) { r.wavelength_lambda = 0; })),
                  ValidationError);

  CHECK_THROWS_AS(validate(DriveParams{-1.0, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(validate(DriveParams{1.0, -1.0, 0.0}), ValidationError);
}
