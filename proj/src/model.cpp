#include "optorouter/model.hpp"

#include <cmath>
#include <string>

#include "optorouter/errors.hpp"

namespace optorouter {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0) || !std::isfinite(value)) {
    throw ValidationError(std::string(name) + " must be finite and > 0 (got " +
                          std::to_string(value) + ")");
  }
}

void require_non_negative(double value, const char* name) {
  if (!(value >= 0) || !std::isfinite(value)) {
    throw ValidationError(std::string(name) + " must be finite and >= 0 (got " +
                          std::to_string(value) + ")");
  }
}

}  // namespace

void validate(const RawParams& raw) {
  require_positive(raw.wavelength_lambda, "wavelength_lambda");
  require_positive(raw.cavity_length_L, "cavity_length_L");
  require_positive(raw.mirror_mass_m, "mirror_mass_m");
  require_positive(raw.omega_m, "omega_m");
  require_positive(raw.gamma_m, "gamma_m");
  require_positive(raw.kappa, "kappa");
  require_positive(raw.Delta, "Delta");
  require_non_negative(raw.n_th, "n_th");
  require_positive(raw.Gamma_photon, "Gamma_photon");
  if (!(raw.kappa < raw.omega_m)) {
    throw ValidationError("kappa must be below omega_m (resolved-sideband regime)");
  }
}

void validate(const DriveParams& drive) {
  require_non_negative(drive.G, "G");
  require_non_negative(drive.epsilon_d, "epsilon_d");
  require_non_negative(drive.omega_d, "omega_d");
  if (drive.epsilon_d > 0 && !(drive.omega_d > 0)) {
    throw ValidationError("omega_d must be > 0 when epsilon_d > 0");
  }
}

ModelParams derive_constants(const RawParams& raw) {
  validate(raw);
  ModelParams p{raw};
  p.omega_c = constants::two_pi * constants::speed_of_light / raw.wavelength_lambda;
  p.x_zpf = std::sqrt(constants::hbar / (2.0 * raw.mirror_mass_m * raw.omega_m));
  p.g0 = p.omega_c / raw.cavity_length_L * p.x_zpf;
  return p;
}

ReferencePreset reference_preset(CaseTag which) {
  const double omega_m = constants::two_pi * 134e3;
  const double kappa = 0.1 * omega_m;

  ReferencePreset preset;
  RawParams& raw = preset.raw;
  raw.wavelength_lambda = 1054e-9;
  raw.cavity_length_L = 6.7e-2;
  raw.mirror_mass_m = 40e-12;  // 40 ng
  raw.omega_m = omega_m;
  raw.gamma_m = constants::two_pi * 0.76;
  raw.kappa = kappa;
  raw.Delta = omega_m;
  raw.n_th = 1.0;

  if (which == CaseTag::CaseI) {
    raw.Gamma_photon = omega_m;
    preset.drive = DriveParams{0.1 * omega_m, 0.0, 0.0};
  } else {
    raw.Gamma_photon = 0.01 * kappa;
    preset.drive = DriveParams{0.2 * omega_m, 2.37e-4 * kappa, 0.8 * omega_m};
  }
  return preset;
}

}  // namespace optorouter
