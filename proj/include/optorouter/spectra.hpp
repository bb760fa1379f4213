#pragma once

// Frequency-domain response of the linearised system and the decomposition
// of the output spectra into signal, thermal and vacuum contributions.
//
// The spectral variable nu is the Fourier frequency in the frame that defines
// the drift matrix (pump frame for case I, pump + omega_d for case II). The
// incident photon's Lorentzian is centred at nu = 0.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "optorouter/dynamics.hpp"

namespace optorouter {

/// Input slots, in order: c_in, d_in, b_in, c_in^dagger, d_in^dagger, b_in^dagger.
using InputCoefficients = std::array<std::complex<double>, 6>;

struct TransferRow {
  double nu = 0;
  InputCoefficients f{};         // a(nu) = f . v_in(nu)
  InputCoefficients f_primed{};  // sqrt(2 kappa) f
  double solve_residual = 0;     // max normwise residual of the four linear solves
};

/// First row of T = -(M + i nu I)^{-1}, contracted with the noise injection
/// patterns. Dense LU with partial pivoting.
/// Throws SingularMatrix when M + i nu I is numerically singular.
TransferRow transfer_row(const DriftMatrix& m, double nu);

struct PortCoefficients {
  InputCoefficients c{};  // c_out = c . v_in
  InputCoefficients d{};  // d_out = d . v_in
};

/// Input-output relation x_out = -x_in + sqrt(2 kappa) a.
PortCoefficients port_coefficients(const TransferRow& row);

/// Scattering weights at one nu. In case II these are the L coefficients.
struct ScatterProbabilities {
  double F1_c = 0;  // |f'_1 - 1|^2
  double F1_d = 0;  // |f'_1|^2
  double F3 = 0;    // |f'_3|^2 + |f'_6|^2
  double F4 = 0;    // |f'_4|^2
  double F5 = 0;    // |f'_5|^2
  double F6 = 0;    // |f'_6|^2
};

ScatterProbabilities probabilities(const PortCoefficients& ports);

/// Unit-area Lorentzian (Gamma / pi) / (nu^2 + Gamma^2), in seconds.
double input_spectrum(double Gamma, double nu);

struct SpectrumDecomposition {
  double nu = 0;
  double S_in_at_nu = 0;
  double S_in_at_minus_nu = 0;
  double signal_c = 0;        // F1_c S_in(nu)
  double signal_d = 0;        // F1_d S_in(nu)
  double thermal = 0;         // F3 n_th
  double vacuum_c_back = 0;   // F4 (S_in(-nu) + 1)
  double vacuum_d = 0;        // F5
  double mech_vacuum = 0;     // F6
  double S_c_out = 0;
  double S_d_out = 0;

  double noise_floor() const { return thermal + vacuum_c_back + vacuum_d + mech_vacuum; }
};

SpectrumDecomposition output_spectra(const ScatterProbabilities& probs, double Gamma,
                                     double n_th, double nu);

enum class ProbePort { Optical, Mechanical };

struct ProbeOptions {
  /// Integration runs for max_damping_times slowest damping times; the result
  /// is accepted when the cavity amplitude moved by less than this fraction of
  /// its magnitude during the last of them.
  double tolerance = 1e-5;
  double max_damping_times = 20.0;
};

/// Independent time-domain check of transfer_row: integrates the linear
/// equations dv/dt = M v + s e^{-i nu t} with s the injection of one input
/// port, in the frame co-rotating with the tone, from v = 0 for a fixed number
/// of damping times. Returns the steady cavity amplitude per unit drive,
/// which equals f_1 (optical port) or f_3 (mechanical port).
/// Throws UnstableSystem for unstable M and NotConverged when the transient
/// persists past max_damping_times.
std::complex<double> classical_probe_oracle(const DriftMatrix& m, double nu, ProbePort port,
                                            const ProbeOptions& options = {});

/// Uniform grid of `count` points on [min, max].
struct NuGrid {
  double min = 0;
  double max = 0;
  std::size_t count = 0;

  double at(std::size_t i) const;
};

struct SpectrumPoint {
  TransferRow row;
  ScatterProbabilities probs;
  SpectrumDecomposition decomposition;
};

SpectrumPoint evaluate_point(const DriftMatrix& m, double nu, double Gamma, double n_th);

/// Evaluates every grid point; results are ordered by grid index whatever the
/// worker count.
std::vector<SpectrumPoint> evaluate_grid(const DriftMatrix& m, const NuGrid& grid, double Gamma,
                                         double n_th, unsigned workers = 1);

}  // namespace optorouter
