#pragma once

// Router verdicts from the output spectra, plus the reference figure datasets.

#include <string>
#include <utility>
#include <vector>

#include "optorouter/model.hpp"
#include "optorouter/spectra.hpp"

namespace optorouter {

enum class OutputPort { Reflected, Transmitted };  // c (left) and d (right)

/// Signal over the summed thermal and vacuum contributions at one nu.
/// Returns +infinity when the noise floor is exactly zero.
double snr(const SpectrumDecomposition& decomp, OutputPort port);

enum class Decision { Transmit, Reflect, Indeterminate };

const char* to_string(Decision d);

struct RouterThresholds {
  double contrast = 0.9;
  double snr = 1.0;
};

struct RoutingVerdict {
  Decision decision = Decision::Indeterminate;
  double contrast = 0;  // (F1_c - F1_d) / (F1_c + F1_d)
  double snr_c = 0;
  double snr_d = 0;
  double operating_nu = 0;
  double Gamma = 0;
  double n_th = 0;
  CaseTag case_tag = CaseTag::CaseI;
  ScatterProbabilities probs;
  SpectrumDecomposition decomposition;
};

/// Transmit iff contrast < -threshold and max(snr) >= snr threshold; Reflect
/// iff contrast > threshold likewise; Indeterminate otherwise.
Decision decide(double contrast, double snr_c, double snr_d, const RouterThresholds& t = {});

/// nu = omega_m for the unmodulated case, nu = 0 for the modulated case.
double operating_nu(const ModelParams& params, CaseTag which);

/// Evaluates the scattering weights and spectra at the operating detuning.
/// Throws UnstableSystem when the drift matrix is not stable.
RoutingVerdict route_decision(const ModelParams& params, const DriveParams& drive, double Gamma,
                              double n_th, const RouterThresholds& thresholds = {});

/// As above with an explicit case selector instead of drive.case_tag().
RoutingVerdict route_decision(const ModelParams& params, const DriveParams& drive, CaseTag which,
                              double Gamma, double n_th, const RouterThresholds& thresholds = {});

enum class FigureId { Fig2, Fig3, Fig4 };

const char* to_string(FigureId id);
FigureId figure_from_string(const std::string& name);  // "fig2", "fig3", "fig4"

/// Default grids: 4001 points on [0, 2 omega_m] (case I) or [-omega_m, omega_m] (case II).
NuGrid default_grid(const ModelParams& params, CaseTag which);

struct CurveSpec {
  std::string label;
  ModelParams params;  // Gamma_photon and n_th included
  DriveParams drive;
};

struct Curve {
  CurveSpec spec;
  std::vector<SpectrumPoint> points;
};

struct FigureDataset {
  FigureId figure = FigureId::Fig2;
  NuGrid grid;
  std::vector<Curve> curves;
};

/// Parameter sets of the named figure.
/// Fig2: case I, G/omega_m in {1e-4, 0.1, 0.2}, Gamma = omega_m, n_th = 1.
/// Fig3: case II, omega_d/omega_m in {0.8, 1}, Gamma = 0.01 kappa, n_th = 1.
/// Fig4: case II, omega_d/omega_m in {0.8, 0.85, 0.9, 1}, Gamma = 0.01 kappa, n_th = 1.
std::vector<CurveSpec> figure_curves(FigureId id);

FigureDataset reproduce(FigureId id, unsigned workers = 1);

}  // namespace optorouter
