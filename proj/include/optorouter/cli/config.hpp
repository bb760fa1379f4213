#pragma once

// Flat key=value run configuration.
//
//   # comment
//   omega_m = 8.41946831e5
//   sweep.omega_d = 6.7356e5, 7.1566e5
//
// Keys are case-sensitive. Parameter keys carry the field names of RawParams
// and DriveParams, in SI units.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optorouter/errors.hpp"
#include "optorouter/model.hpp"
#include "optorouter/router.hpp"
#include "optorouter/spectra.hpp"

namespace optorouter::cli {

/// Parse failure. kind() is UnknownKey, MissingKey, UnparsableValue or
/// DuplicateKey; line() is 0 when no single line is at fault.
class ConfigError : public ValidationError {
 public:
  ConfigError(std::string kind, std::size_t line, const std::string& message)
      : ValidationError(std::move(kind), message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct SweepAxis {
  std::string name;  // a parameter key
  std::vector<double> values;
};

struct TrajectorySpec {
  double t_end = 0;      // 0 disables trajectory export
  double dt = 0;         // 0 selects the largest admissible step
  double ramp_time = 0;
};

struct RunConfig {
  RawParams raw;
  DriveParams drive;
  CaseTag case_tag = CaseTag::CaseI;
  NuGrid grid;
  std::vector<SweepAxis> sweep;
  std::filesystem::path out_dir = ".";
  unsigned workers = 1;
  std::optional<double> epsilon_p;  // otherwise derived from G
  TrajectorySpec trajectory;
  std::optional<FigureId> figure;
};

/// Keys that must appear in every configuration.
const std::vector<std::string>& required_keys();

/// True for keys naming a numeric model or drive parameter (valid sweep axes).
bool is_parameter_key(std::string_view key);

/// Sets a numeric model or drive parameter by key. Throws ValidationError for
/// non-parameter keys.
void set_parameter(RawParams& raw, DriveParams& drive, std::string_view key, double value);
double get_parameter(const RawParams& raw, const DriveParams& drive, std::string_view key);

/// Parses and validates a configuration. Throws ConfigError for syntax
/// problems and ValidationError for parameter sets that fail their invariants.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::filesystem::path& path);

/// Configuration reproducing the reference parameter set for one case.
RunConfig preset_config(CaseTag which);

}  // namespace optorouter::cli
