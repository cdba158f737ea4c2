#pragma once

#include <string>
#include <utility>

#include "ictmc/model.hpp"

namespace ictmc::cli {

/// Load profile rho(t) = base + amplitude * sin(2 pi cycles t / T).
struct LoadBand {
  double base = 0.85;
  double amplitude = 0.2;
  double cycles = 1.5;

  static LoadBand wide() { return {0.85, 0.2, 1.5}; }     // 0.65 .. 1.05
  static LoadBand narrow() { return {1.0, 0.05, 1.5}; }   // 0.95 .. 1.05
  bool operator==(const LoadBand&) const = default;
};

/// Parses "wide" or "narrow".
[[nodiscard]] LoadBand parse_band(const std::string& name);

/// Servers and queue capacity for a size label: one of the named sizes
/// 54, 150, 390, 1200, 3300 or an explicit "S+Q".
[[nodiscard]] std::pair<int, int> parse_size_label(const std::string& label);

struct DayScenarioOptions {
  int servers = 100;
  int queue_capacity = 50;
  LoadBand band = LoadBand::wide();
  double gamma = 0.97;
  double patience_mean = 4.0;  // minutes
  double epsilon_step = 1e-7;
  double epsilon_total = 3e-2;
  bool detection = true;
  double mu = 0.2;             // per minute, mean handling time 5 minutes
  double horizon = 24 * 60.0;  // minutes
  int step_count = 288;
  /// Average the sinusoid exactly over each step instead of taking its
  /// value at the step midpoint.
  bool integral_average = false;
};

/// A day of 5-minute steps with a two-peak sinusoidal arrival rate
/// lambda_j = s * mu * rho(t_j), constant servers and queue capacity.
[[nodiscard]] ScenarioConfig generate_day_scenario(const DayScenarioOptions& options);

/// Convenience overload taking a size label and band name.
[[nodiscard]] ScenarioConfig generate_day_scenario(const std::string& size_label,
                                                     const std::string& band, double gamma,
                                                     double patience_mean, double epsilon_step,
                                                     double epsilon_total);

/// Arrival rate for a load band sampled over step j of a horizon.
[[nodiscard]] double band_arrival_rate(const LoadBand& band, double capacity_rate,
                                       double horizon, double step_start, double step_length,
                                       bool integral_average);

}  // namespace ictmc::cli
