#pragma once

// CSV and JSON writers for the command-line tool.

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "optorouter/dynamics.hpp"
#include "optorouter/router.hpp"
#include "optorouter/spectra.hpp"
#include "optorouter/steadystate.hpp"

namespace optorouter::cli {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// nu_over_omega_m,F1c,F1d,F3,F4,F5,F6,S_in,S_c_out,S_d_out,signal_c,signal_d,thermal,vacuum_total
const std::string& spectrum_csv_header();

void write_spectrum_csv(std::ostream& out, std::span<const SpectrumPoint> points, double omega_m);

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

nlohmann::json to_json(const StabilityReport& report);
nlohmann::json to_json(const RoutingVerdict& verdict);
nlohmann::json to_json(const SteadyState& state);
nlohmann::json params_json(const RawParams& raw, const DriveParams& drive);

/// Writes `contents` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace optorouter::cli
