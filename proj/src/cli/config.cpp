#include "optorouter/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace optorouter::cli {

namespace {

struct RawField {
  const char* key;
  double RawParams::*member;
};

struct DriveField {
  const char* key;
  double DriveParams::*member;
};

constexpr RawField kRawFields[] = {
    {"wavelength_lambda", &RawParams::wavelength_lambda},
    {"cavity_length_L", &RawParams::cavity_length_L},
    {"mirror_mass_m", &RawParams::mirror_mass_m},
    {"omega_m", &RawParams::omega_m},
    {"gamma_m", &RawParams::gamma_m},
    {"kappa", &RawParams::kappa},
    {"Delta", &RawParams::Delta},
    {"n_th", &RawParams::n_th},
    {"Gamma_photon", &RawParams::Gamma_photon},
};

constexpr DriveField kDriveFields[] = {
    {"G", &DriveParams::G},
    {"epsilon_d", &DriveParams::epsilon_d},
    {"omega_d", &DriveParams::omega_d},
};

const std::set<std::string, std::less<>> kSettingKeys = {
    "case",         "nu_min",           "nu_max",        "nu_count",
    "out_dir",      "workers",          "epsilon_p",     "trajectory_t_end",
    "trajectory_dt", "trajectory_ramp_time",
};

constexpr std::string_view kSweepPrefix = "sweep.";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::size_t line, std::string_view key) {
  text = trim(text);
  double value = 0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  // from_chars rejects a leading '+'.
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ConfigError("UnparsableValue", line,
                      "line " + std::to_string(line) + ": cannot parse '" + std::string(text) +
                          "' as a number for key '" + std::string(key) + "'");
  }
  return value;
}

std::size_t parse_count(std::string_view text, std::size_t line, std::string_view key) {
  const double v = parse_double(text, line, key);
  if (v < 0 || v != std::floor(v) || v > 1e12) {
    throw ConfigError("UnparsableValue", line,
                      "line " + std::to_string(line) + ": '" + std::string(key) +
                          "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

std::vector<double> parse_list(std::string_view text, std::size_t line, std::string_view key) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    values.push_back(parse_double(piece, line, key));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

}  // namespace

const std::vector<std::string>& required_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : kRawFields) k.emplace_back(f.key);
    k.emplace_back("G");
    return k;
  }();
  return keys;
}

bool is_parameter_key(std::string_view key) {
  return std::any_of(std::begin(kRawFields), std::end(kRawFields),
                     [&](const RawField& f) { return key == f.key; }) ||
         std::any_of(std::begin(kDriveFields), std::end(kDriveFields),
                     [&](const DriveField& f) { return key == f.key; });
}

void set_parameter(RawParams& raw, DriveParams& drive, std::string_view key, double value) {
  for (const auto& f : kRawFields) {
    if (key == f.key) {
      raw.*f.member = value;
      return;
    }
  }
  for (const auto& f : kDriveFields) {
    if (key == f.key) {
      drive.*f.member = value;
      return;
    }
  }
  throw ValidationError("'" + std::string(key) + "' is not a model parameter");
}

double get_parameter(const RawParams& raw, const DriveParams& drive, std::string_view key) {
  for (const auto& f : kRawFields) {
    if (key == f.key) return raw.*f.member;
  }
  for (const auto& f : kDriveFields) {
    if (key == f.key) return drive.*f.member;
  }
  throw ValidationError("'" + std::string(key) + "' is not a model parameter");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, std::size_t, std::less<>> seen;  // key -> line
  std::optional<double> nu_min, nu_max;
  std::optional<std::size_t> nu_count;
  std::optional<int> case_number;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("UnparsableValue", line_no,
                        "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (auto it = seen.find(key); it != seen.end()) {
      throw ConfigError("DuplicateKey", line_no,
                        "line " + std::to_string(line_no) + ": key '" + std::string(key) +
                            "' already set on line " + std::to_string(it->second));
    }

    if (key.starts_with(kSweepPrefix)) {
      const std::string_view name = key.substr(kSweepPrefix.size());
      if (!is_parameter_key(name)) {
        throw ConfigError("UnknownKey", line_no,
                          "line " + std::to_string(line_no) + ": sweep axis '" + std::string(name) +
                              "' is not a model parameter");
      }
      cfg.sweep.push_back({std::string(name), parse_list(value, line_no, key)});
    } else if (is_parameter_key(key)) {
      set_parameter(cfg.raw, cfg.drive, key, parse_double(value, line_no, key));
    } else if (kSettingKeys.contains(key)) {
      if (key == "case") {
        const auto n = parse_count(value, line_no, key);
        if (n != 1 && n != 2) {
          throw ConfigError("UnparsableValue", line_no,
                            "line " + std::to_string(line_no) + ": case must be 1 or 2");
        }
        case_number = static_cast<int>(n);
      } else if (key == "nu_min") {
        nu_min = parse_double(value, line_no, key);
      } else if (key == "nu_max") {
        nu_max = parse_double(value, line_no, key);
      } else if (key == "nu_count") {
        nu_count = parse_count(value, line_no, key);
      } else if (key == "out_dir") {
        if (value.empty()) {
          throw ConfigError("UnparsableValue", line_no,
                            "line " + std::to_string(line_no) + ": out_dir is empty");
        }
        cfg.out_dir = std::string(value);
      } else if (key == "workers") {
        cfg.workers = static_cast<unsigned>(parse_count(value, line_no, key));
      } else if (key == "epsilon_p") {
        cfg.epsilon_p = parse_double(value, line_no, key);
      } else if (key == "trajectory_t_end") {
        cfg.trajectory.t_end = parse_double(value, line_no, key);
      } else if (key == "trajectory_dt") {
        cfg.trajectory.dt = parse_double(value, line_no, key);
      } else if (key == "trajectory_ramp_time") {
        cfg.trajectory.ramp_time = parse_double(value, line_no, key);
      }
    } else {
      throw ConfigError("UnknownKey", line_no,
                        "line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    seen.emplace(std::string(key), line_no);
  }

  std::vector<std::string> missing;
  for (const auto& k : required_keys()) {
    if (!seen.contains(k)) missing.push_back(k);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& k : missing) list += (list.empty() ? "" : ", ") + k;
    throw ConfigError("MissingKey", 0, "missing required keys: " + list);
  }

  validate(cfg.raw);
  validate(cfg.drive);
  if (case_number) {
    cfg.case_tag = *case_number == 1 ? CaseTag::CaseI : CaseTag::CaseII;
  } else {
    cfg.case_tag = cfg.drive.case_tag();
  }
  if (cfg.case_tag == CaseTag::CaseI && cfg.drive.epsilon_d > 0) {
    throw ValidationError("case 1 requires epsilon_d = 0");
  }

  const ModelParams derived = derive_constants(cfg.raw);
  cfg.grid = default_grid(derived, cfg.case_tag);
  if (nu_min) cfg.grid.min = *nu_min;
  if (nu_max) cfg.grid.max = *nu_max;
  if (nu_count) cfg.grid.count = *nu_count;
  if (cfg.grid.count < 2) throw ValidationError("nu_count must be >= 2");
  if (!(cfg.grid.max > cfg.grid.min)) throw ValidationError("nu_max must exceed nu_min");
  if (cfg.workers < 1) throw ValidationError("workers must be >= 1");
  if (cfg.epsilon_p && !(*cfg.epsilon_p >= 0)) throw ValidationError("epsilon_p must be >= 0");
  if (cfg.trajectory.t_end < 0 || cfg.trajectory.dt < 0 || cfg.trajectory.ramp_time < 0) {
    throw ValidationError("trajectory settings must be >= 0");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

RunConfig preset_config(CaseTag which) {
  const ReferencePreset preset = reference_preset(which);
  RunConfig cfg;
  cfg.raw = preset.raw;
  cfg.drive = preset.drive;
  cfg.case_tag = which;
  cfg.grid = default_grid(derive_constants(preset.raw), which);
  return cfg;
}

}  // namespace optorouter::cli
