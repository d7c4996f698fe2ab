#pragma once

#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qkt {

enum class ScanAxis { Theta, Phi };

/// Parameters shared by every experiment subcommand. A single key set is
/// accepted everywhere; each experiment reads the keys it needs.
struct ExperimentConfig {
  int n_qubits = 50;
  double p = std::numbers::pi / 2;
  double k_min = 0.0;
  double k_max = 6.8;
  std::optional<double> k_step;  // unset: experiment default (0.1 quantum, 0.01 classical)
  int n_kicks = 500;
  double theta = std::numbers::pi / 2;  // default: south pole w.r.t. Y
  double phi = -std::numbers::pi / 2;
  ScanAxis scan_axis = ScanAxis::Theta;
  std::optional<double> scan_min;  // unset: full range of the axis
  std::optional<double> scan_max;
  int scan_points = 181;
  int L = 500;
  int omega_grid = 4096;
  int grid_theta = 200;
  int grid_phi = 200;
  int transient = 1000;
  int record = 100;
  double displacement = 1e-3;
  int seeds = 40;
  int iterates = 500;
  bool average = false;  // time-average entanglement over kicks 1..n_kicks
  int workers = 1;
  std::filesystem::path out;

  /// Applies one `key = value` assignment; throws ConfigError for unknown
  /// keys or unparsable values.
  void set(std::string_view key, std::string_view value);

  /// Checks the cross-field invariants; throws ConfigError.
  void validate() const;

  double resolved_k_step(double fallback) const { return k_step.value_or(fallback); }
};

struct ConfigKey {
  std::string_view name;
  std::string_view help;
};

/// Every accepted key with its description and default.
const std::vector<ConfigKey>& config_keys();

/// Parses `key = value` lines (`#` starts a comment) on top of `base`.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

}  // namespace qkt
