#include "cli/day_scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace ictmc::cli {

LoadBand parse_band(const std::string& name) {
  if (name == "wide") return LoadBand::wide();
  if (name == "narrow") return LoadBand::narrow();
  throw std::invalid_argument("unknown load band '" + name + "' (expected wide or narrow)");
}

std::pair<int, int> parse_size_label(const std::string& label) {
  if (label == "54") return {30, 24};
  if (label == "150") return {100, 50};
  if (label == "390") return {300, 90};
  if (label == "1200") return {1000, 200};
  if (label == "3300") return {3000, 300};
  const auto plus = label.find('+');
  if (plus != std::string::npos) {
    try {
      std::size_t used_s = 0;
      std::size_t used_q = 0;
      const std::string s_text = label.substr(0, plus);
      const std::string q_text = label.substr(plus + 1);
      const int s = std::stoi(s_text, &used_s);
      const int q = std::stoi(q_text, &used_q);
      if (used_s == s_text.size() && used_q == q_text.size() && s >= 1 && q >= 0) return {s, q};
    } catch (const std::logic_error&) {
    }
  }
  throw std::invalid_argument("unknown size label '" + label +
                              "' (expected 54, 150, 390, 1200, 3300 or S+Q)");
}

double band_arrival_rate(const LoadBand& band, double capacity_rate, double horizon,
                         double step_start, double step_length, bool integral_average) {
  const double omega = 2.0 * std::numbers::pi * band.cycles / horizon;
  double shape = 0.0;
  if (integral_average) {
    const double t0 = step_start;
    const double t1 = step_start + step_length;
    shape = (std::cos(omega * t0) - std::cos(omega * t1)) / (omega * step_length);
  } else {
    shape = std::sin(omega * (step_start + 0.5 * step_length));
  }
  return capacity_rate * (band.base + band.amplitude * shape);
}

ScenarioConfig generate_day_scenario(const DayScenarioOptions& o) {
  if (o.step_count < 1) throw std::invalid_argument("step count must be positive");
  if (!(o.patience_mean > 0.0)) throw std::invalid_argument("patience mean must be positive");
  ScenarioConfig config;
  config.step_length = o.horizon / o.step_count;
  config.horizon = config.step_length * o.step_count;
  config.gamma = o.gamma;
  config.eta = 1.0 / o.patience_mean;
  config.queue_capacity = o.queue_capacity;
  config.epsilon_step = o.epsilon_step;
  config.epsilon_total = o.epsilon_total;
  config.detection_enabled = o.detection;
  config.steps.reserve(static_cast<std::size_t>(o.step_count));
  const double capacity_rate = o.servers * o.mu;
  for (int j = 0; j < o.step_count; ++j) {
    const double lambda = band_arrival_rate(o.band, capacity_rate, config.horizon,
                                            j * config.step_length, config.step_length,
                                            o.integral_average);
    config.steps.push_back({lambda, o.mu, o.servers});
  }
  return config;
}

ScenarioConfig generate_day_scenario(const std::string& size_label, const std::string& band,
                                       double gamma, double patience_mean,
                                       double epsilon_step, double epsilon_total) {
  DayScenarioOptions o;
  std::tie(o.servers, o.queue_capacity) = parse_size_label(size_label);
  o.band = parse_band(band);
  o.gamma = gamma;
  o.patience_mean = patience_mean;
  o.epsilon_step = epsilon_step;
  o.epsilon_total = epsilon_total;
  return generate_day_scenario(o);
}

}  // namespace ictmc::cli
