#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <string>

#include "optorouter/model.hpp"

namespace testing {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

inline optorouter::ModelParams preset_params(optorouter::CaseTag which = optorouter::CaseTag::CaseII) {
  return optorouter::derive_constants(optorouter::reference_preset(which).raw);
}

/// Fresh, empty directory under the system temp path.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  auto dir = std::filesystem::temp_directory_path() /
             ("optorouter_" + tag + "_" + std::to_string(stamp) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing
