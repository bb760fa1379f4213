#include "optorouter/steadystate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "optorouter/errors.hpp"

namespace optorouter {

using cd = std::complex<double>;

namespace {

constexpr cd I{0.0, 1.0};

double relative_gap(cd a, cd b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

cd alpha_map(const ModelParams& p, double epsilon_p, cd beta) {
  return epsilon_p / (2.0 * p.kappa + I * p.Delta + I * p.g0 * (2.0 * beta.real()));
}

cd beta_map(const ModelParams& p, cd alpha) {
  return -I * p.g0 * std::norm(alpha) / (p.gamma_m + I * p.omega_m);
}

struct SeedResult {
  cd alpha;
  cd beta;
  double last_change;
  bool converged;
};

SeedResult relax_from(const ModelParams& p, double epsilon_p, cd alpha, cd beta,
                      const SteadyOptions& o) {
  const double r = o.relaxation;
  double change = 0;
  for (int it = 0; it < o.max_iterations; ++it) {
    const cd alpha_next = (1.0 - r) * alpha + r * alpha_map(p, epsilon_p, beta);
    const cd beta_next = (1.0 - r) * beta + r * beta_map(p, alpha);
    change = std::max(relative_gap(alpha_next, alpha), relative_gap(beta_next, beta));
    alpha = alpha_next;
    beta = beta_next;
    if (change <= o.tolerance) {
      return {alpha, beta_map(p, alpha), change, true};
    }
  }
  return {alpha, beta, change, false};
}

}  // namespace

double steady_residual(const ModelParams& params, double epsilon_p, cd alpha, cd beta) {
  return std::max(relative_gap(alpha, alpha_map(params, epsilon_p, beta)),
                  relative_gap(beta, beta_map(params, alpha)));
}

void require_single_fixed_point(const std::vector<cd>& alphas, double threshold) {
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t j = i + 1; j < alphas.size(); ++j) {
      if (relative_gap(alphas[i], alphas[j]) > threshold) {
        std::ostringstream msg;
        msg << "distinct steady states reached from different seeds:";
        for (const cd& a : alphas) msg << " alpha=" << a;
        throw Multistability(msg.str(), alphas);
      }
    }
  }
}

SteadyState solve_steady(const ModelParams& params, double epsilon_p,
                         const SteadyOptions& options) {
  if (!(epsilon_p >= 0) || !std::isfinite(epsilon_p)) {
    throw ValidationError("epsilon_p must be finite and >= 0");
  }
  const cd linear = epsilon_p / (2.0 * params.kappa + I * params.Delta);
  const std::array<cd, 3> seeds{linear, cd{}, 2.0 * linear};

  std::vector<cd> alphas;
  SeedResult primary{};
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    SeedResult res = relax_from(params, epsilon_p, seeds[k], cd{}, options);
    if (!res.converged) {
      const double residual = steady_residual(params, epsilon_p, res.alpha, res.beta);
      std::ostringstream msg;
      msg << "steady state did not converge in " << options.max_iterations
          << " iterations (last residual " << residual << ")";
      throw NonConvergence(msg.str(), residual);
    }
    if (k == 0) primary = res;
    alphas.push_back(res.alpha);
  }

  require_single_fixed_point(alphas, options.distinct_threshold);

  SteadyState s;
  s.alpha = primary.alpha;
  s.beta = primary.beta;
  s.G_eff = params.g0 * std::abs(s.alpha);
  s.Delta_prime = params.Delta + params.g0 * 2.0 * s.beta.real();
  s.residual = steady_residual(params, epsilon_p, s.alpha, s.beta);
  if (s.residual > 1e-10) {
    throw NonConvergence("steady-state residual above 1e-10", s.residual);
  }
  return s;
}

double pump_for_coupling(const ModelParams& params, double G_target,
                         const SteadyOptions& options) {
  if (!(G_target >= 0) || !std::isfinite(G_target)) {
    throw ValidationError("G_target must be finite and >= 0");
  }
  if (G_target == 0) return 0.0;

  auto coupling_at = [&](double eps) {
    try {
      return solve_steady(params, eps, options).G_eff;
    } catch (const NumericalError& e) {
      throw NotAttainable("G = " + std::to_string(G_target) +
                          " not reachable before the steady state breaks down: " + e.what());
    }
  };

  double lo = 0;
  double hi = G_target / params.g0 * std::abs(2.0 * params.kappa + I * params.Delta);
  for (int k = 0;; ++k) {
    if (k == 200) throw NotAttainable("could not bracket G = " + std::to_string(G_target));
    if (coupling_at(hi) >= G_target) break;
    lo = hi;
    hi *= 2.0;
  }

  for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (coupling_at(mid) < G_target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double g_lo = coupling_at(lo);
  const double g_hi = coupling_at(hi);
  const double eps = std::abs(g_lo - G_target) < std::abs(g_hi - G_target) ? lo : hi;
  if (std::abs(coupling_at(eps) - G_target) > 1e-8 * G_target) {
    throw NotAttainable("bisection stalled before reaching 1e-8 relative accuracy");
  }
  return eps;
}

double max_mean_field_step(const ModelParams& params) {
  return 0.01 / std::max({params.omega_m, std::abs(params.Delta), 2.0 * params.kappa});
}

namespace {

struct MeanFieldState {
  cd alpha;
  cd beta;
};

double smoothstep(double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

class MeanFieldRhs {
 public:
  MeanFieldRhs(const ModelParams& p, double epsilon_p, double ramp_time)
      : cavity_(-(2.0 * p.kappa + I * p.Delta)),
        mirror_(-(p.gamma_m + I * p.omega_m)),
        g0_(p.g0),
        epsilon_p_(epsilon_p),
        ramp_time_(ramp_time) {}

  MeanFieldState operator()(double t, const MeanFieldState& y) const {
    const double pump =
        ramp_time_ > 0 ? epsilon_p_ * smoothstep(t / ramp_time_) : epsilon_p_;
    return {cavity_ * y.alpha - I * g0_ * y.alpha * (2.0 * y.beta.real()) + pump,
            mirror_ * y.beta - I * g0_ * std::norm(y.alpha)};
  }

 private:
  cd cavity_;
  cd mirror_;
  double g0_;
  double epsilon_p_;
  double ramp_time_;
};

MeanFieldState rk4_step(const MeanFieldRhs& f, double t, const MeanFieldState& y, double h) {
  auto axpy = [](const MeanFieldState& a, double s, const MeanFieldState& k) {
    return MeanFieldState{a.alpha + s * k.alpha, a.beta + s * k.beta};
  };
  const MeanFieldState k1 = f(t, y);
  const MeanFieldState k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
  const MeanFieldState k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
  const MeanFieldState k4 = f(t + h, axpy(y, h, k3));
  return {y.alpha + h / 6.0 * (k1.alpha + 2.0 * k2.alpha + 2.0 * k3.alpha + k4.alpha),
          y.beta + h / 6.0 * (k1.beta + 2.0 * k2.beta + 2.0 * k3.beta + k4.beta)};
}

}  // namespace

Trajectory integrate_mean_field(const ModelParams& params, double epsilon_p,
                                const MeanFieldOptions& o) {
  if (!(epsilon_p >= 0) || !std::isfinite(epsilon_p)) {
    throw ValidationError("epsilon_p must be finite and >= 0");
  }
  if (!(o.t_end > 0) || !(o.dt > 0) || o.ramp_time < 0 || o.max_samples < 2) {
    throw ValidationError("mean-field integration needs t_end > 0, dt > 0, ramp_time >= 0, max_samples >= 2");
  }
  const double dt_max = max_mean_field_step(params);
  if (o.dt > dt_max * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "dt = " << o.dt << " exceeds 0.01/max(omega_m, |Delta|, 2 kappa) = " << dt_max;
    throw StepSizeTooLarge(msg.str());
  }

  const auto steps = static_cast<std::size_t>(std::ceil(o.t_end / o.dt));
  const double h = o.t_end / static_cast<double>(steps);
  const std::size_t stride =
      std::max<std::size_t>(1, (steps + o.max_samples - 2) / (o.max_samples - 1));
  constexpr std::size_t kErrorCheckStride = 256;

  // Mixed absolute/relative error control; the absolute parts are the
  // natural amplitude scales of the driven system.
  const double alpha_ref = std::max(std::abs(o.alpha0),
                                    epsilon_p / std::abs(2.0 * params.kappa + I * params.Delta));
  const double beta_ref = std::max(std::abs(o.beta0),
                                   params.g0 * alpha_ref * alpha_ref / params.omega_m);

  const MeanFieldRhs rhs(params, epsilon_p, o.ramp_time);
  MeanFieldState y{o.alpha0, o.beta0};
  Trajectory out;
  out.reserve(steps / stride + 2);
  out.push_back({0.0, y.alpha, y.beta});

  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    MeanFieldState next = rk4_step(rhs, t, y, h);

    if (k % kErrorCheckStride == 0 && (alpha_ref > 0 || beta_ref > 0)) {
      const MeanFieldState half = rk4_step(rhs, t + 0.5 * h, rk4_step(rhs, t, y, 0.5 * h), 0.5 * h);
      const double ea = alpha_ref > 0 ? std::abs(next.alpha - half.alpha) /
                                            std::max(std::abs(half.alpha), alpha_ref)
                                      : 0.0;
      const double eb = beta_ref > 0 ? std::abs(next.beta - half.beta) /
                                           std::max(std::abs(half.beta), beta_ref)
                                     : 0.0;
      if (std::max(ea, eb) > o.local_error_tolerance) {
        std::ostringstream msg;
        msg << "local error estimate " << std::max(ea, eb) << " at t = " << t
            << " exceeds tolerance " << o.local_error_tolerance;
        throw StepSizeTooLarge(msg.str());
      }
    }

    y = next;
    if ((k + 1) % stride == 0 || k + 1 == steps) {
      out.push_back({k + 1 == steps ? o.t_end : static_cast<double>(k + 1) * h, y.alpha, y.beta});
    }
  }
  return out;
}

}  // namespace optorouter
