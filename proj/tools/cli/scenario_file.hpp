#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ictmc/model.hpp"
#include "ictmc/probability_vector.hpp"

namespace ictmc::cli {

/// Malformed scenario text: syntax errors, missing keys, wrong types or
/// inconsistent list lengths. The message carries a line number when one
/// can be attributed.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scenario as read from disk.
struct ScenarioFile {
  ScenarioConfig config;
  /// Explicit initial distribution; empty means the system starts empty.
  std::optional<std::vector<double>> initial_state;

  [[nodiscard]] ProbabilityVector initial_distribution() const;
  bool operator==(const ScenarioFile&) const = default;
};

/// Parses either a JSON object or line-oriented `key: value` text in which
/// each value is a JSON literal. Lines starting with '#' are comments.
///
/// Recognized keys: horizon_minutes, step_minutes, servers, mu_per_min,
/// gamma, patience_mean_minutes (or eta_per_min), queue_capacity,
/// epsilon_step, epsilon_total, detection, arrival, initial_state.
/// `arrival` is {"lambda_per_min": [...]} or
/// {"sinusoidal": {"base": a, "amplitude": b, "cycles": c}} with
/// lambda_j = s_j mu_j (a + b sin(2 pi c t_mid / T)).
///
/// Throws ConfigError. Semantic feasibility (gamma range and so on) is left
/// to ScenarioConfig::validate.
[[nodiscard]] ScenarioFile parse_scenario(std::string_view text);

[[nodiscard]] ScenarioFile load_scenario(const std::filesystem::path& path);

/// JSON text that parses back to an identical ScenarioFile.
[[nodiscard]] std::string serialize_scenario(const ScenarioFile& scenario);

}  // namespace ictmc::cli
