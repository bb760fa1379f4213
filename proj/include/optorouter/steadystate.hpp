#pragma once

// Classical mean-field steady state of the pumped cavity and mirror:
//
//   alpha = eps_p / (2 kappa + i Delta + i g0 (beta + beta*))
//   beta  = -i g0 |alpha|^2 / (gamma + i omega_m)

#include <complex>
#include <cstddef>
#include <vector>

#include "optorouter/model.hpp"

namespace optorouter {

struct SteadyState {
  std::complex<double> alpha;
  std::complex<double> beta;
  double G_eff = 0;        // g0 |alpha|
  double Delta_prime = 0;  // Delta + g0 (beta + beta*)
  double residual = 0;     // max relative residual of the two equations
};

struct SteadyOptions {
  double relaxation = 0.5;
  int max_iterations = 100000;
  double tolerance = 1e-14;           // on the relative update size
  double distinct_threshold = 1e-6;   // relative spread that counts as a second fixed point
};

/// Damped fixed-point iteration from the seeds zero, the linear response
/// eps_p / (2 kappa + i Delta) and twice that.
///
/// Throws NonConvergence when a seed hits the iteration cap and
/// Multistability when the seeds settle on different fixed points.
SteadyState solve_steady(const ModelParams& params, double epsilon_p,
                         const SteadyOptions& options = {});

/// Throws Multistability when any two of the cavity amplitudes are more than
/// `threshold` apart (relative). solve_steady applies this to its seed results.
void require_single_fixed_point(const std::vector<std::complex<double>>& alphas,
                                double threshold);

/// Max relative residual of the two steady-state equations at (alpha, beta).
double steady_residual(const ModelParams& params, double epsilon_p,
                       std::complex<double> alpha, std::complex<double> beta);

/// Pump amplitude whose steady state has G_eff == G_target (to 1e-8 relative),
/// found by bracketing and bisection on eps_p -> G_eff.
/// Throws NotAttainable if no stable bracket exists.
double pump_for_coupling(const ModelParams& params, double G_target,
                         const SteadyOptions& options = {});

struct MeanFieldOptions {
  double t_end = 0;
  double dt = 0;  // must satisfy dt <= max_mean_field_step(params)
  /// Pump switch-on time. The pump follows a C2 smoothstep from 0 to eps_p
  /// over [0, ramp_time]; 0 means a step at t = 0.
  double ramp_time = 0;
  std::complex<double> alpha0{};
  std::complex<double> beta0{};
  std::size_t max_samples = 1001;
  double local_error_tolerance = 1e-8;
};

struct MeanFieldSample {
  double t;
  std::complex<double> alpha;
  std::complex<double> beta;
};

using Trajectory = std::vector<MeanFieldSample>;

/// Largest step accepted by integrate_mean_field: 0.01 / max(omega_m, |Delta|, 2 kappa).
double max_mean_field_step(const ModelParams& params);

/// Fixed-step RK4 integration of the noiseless nonlinear equations of motion
/// for (alpha, beta). The last sample is always at t_end.
///
/// Throws StepSizeTooLarge if dt exceeds max_mean_field_step or the
/// step-doubling error estimate exceeds local_error_tolerance.
Trajectory integrate_mean_field(const ModelParams& params, double epsilon_p,
                                const MeanFieldOptions& options);

}  // namespace optorouter
