#pragma once

// Physical parameters of the two-port cavity with a movable mirror.
// Every frequency and rate is an angular frequency in rad/s.

#include <numbers>

namespace optorouter {

namespace constants {
inline constexpr double speed_of_light = 299792458.0;   // m/s
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double two_pi = 2.0 * std::numbers::pi;
}  // namespace constants

enum class CaseTag { CaseI, CaseII };

/// Directly specified physical constants.
struct RawParams {
  double wavelength_lambda = 0;  // m
  double cavity_length_L = 0;    // m
  double mirror_mass_m = 0;      // kg
  double omega_m = 0;            // mechanical frequency
  double gamma_m = 0;            // mechanical damping
  double kappa = 0;              // half the total cavity damping (cavity decays at 2 kappa)
  double Delta = 0;              // cavity-pump detuning omega_c - omega_p
  double n_th = 0;               // thermal phonon occupation
  double Gamma_photon = 0;       // linewidth of the incident single photon
};

/// Raw parameters plus the constants derived from them.
struct ModelParams : RawParams {
  double omega_c = 0;  // cavity resonance, 2 pi c / lambda
  double x_zpf = 0;    // mechanical zero-point amplitude, m
  double g0 = 0;       // single-photon optomechanical coupling

  RawParams raw() const { return static_cast<const RawParams&>(*this); }
};

/// Drive settings. epsilon_d == 0 selects the unmodulated case.
struct DriveParams {
  double G = 0;          // effective (pump-enhanced) coupling, taken real
  double epsilon_d = 0;  // amplitude of the spring-constant modulation
  double omega_d = 0;    // half the modulation frequency

  CaseTag case_tag() const { return epsilon_d > 0 ? CaseTag::CaseII : CaseTag::CaseI; }
};

/// Throws ValidationError naming the first offending field.
void validate(const RawParams& raw);
void validate(const DriveParams& drive);

/// Fills omega_c, x_zpf and g0 = (omega_c / L) * x_zpf with
/// x_zpf = sqrt(hbar / (2 m omega_m)).
ModelParams derive_constants(const RawParams& raw);

struct ReferencePreset {
  RawParams raw;
  DriveParams drive;
};

/// Reference parameter set: lambda = 1054 nm, L = 6.7 cm, m = 40 ng,
/// omega_m = 2 pi x 134 kHz, gamma_m = 2 pi x 0.76 rad/s, kappa = 0.1 omega_m,
/// Delta = omega_m, n_th = 1.
///
/// Case I uses G = 0.1 omega_m and a photon linewidth Gamma = omega_m (the
/// linewidth that maximises the signal at the case-I operating point).
/// Case II uses G = 0.2 omega_m, epsilon_d = 2.37e-4 kappa, omega_d = 0.8 omega_m
/// and Gamma = 0.01 kappa.
ReferencePreset reference_preset(CaseTag which = CaseTag::CaseII);

}  // namespace optorouter
