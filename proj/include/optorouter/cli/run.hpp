#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "optorouter/cli/config.hpp"

namespace optorouter::cli {

enum class Subcommand { Steady, Stability, Spectrum, Route, Reproduce, Sweep };

Subcommand subcommand_from_string(std::string_view name);
const char* to_string(Subcommand sub);

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// Upper bound on (sweep points x grid points) for one sweep.
inline constexpr double kMaxSweepEvaluations = 1e6;

using SweepPoint = std::vector<std::pair<std::string, double>>;

/// Cartesian product of the axes; the first axis varies slowest.
std::vector<SweepPoint> sweep_points(const std::vector<SweepAxis>& axes);

/// Executes one subcommand, writing its outputs under config.out_dir.
/// Returns kExitOk, kExitValidation or kExitNumerical; on failure writes a
/// single `error kind=<Kind> message=<text>` line to `err`.
int run(const RunConfig& config, Subcommand sub, std::ostream& err);

}  // namespace optorouter::cli
