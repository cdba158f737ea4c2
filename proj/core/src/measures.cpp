#include "ictmc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ictmc {

double expected_state(const ProbabilityVector& p) {
  double es = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) es += static_cast<double>(i) * p[i];
  return es;
}

double p_immediate_service(const ProbabilityVector& p, int servers) {
  if (servers < 0 || static_cast<std::size_t>(servers) > p.size())
    throw std::invalid_argument("p_immediate_service: servers exceed n + 1");
  double total = 0.0;
  for (int k = 0; k < servers; ++k) total += p[static_cast<std::size_t>(k)];
  return total;
}

double max_tail_probability(const std::vector<ProbabilityVector>& series) {
  if (series.empty()) throw std::invalid_argument("max_tail_probability: empty series");
  double worst = 0.0;
  for (const auto& p : series) worst = std::max(worst, p.p.back());
  return worst;
}

MeasureSeries compute_measures(const ScenarioConfig& config, const HorizonResult& result) {
  if (result.distributions.size() != config.steps.size())
    throw std::invalid_argument("compute_measures: result does not match the scenario");
  MeasureSeries m;
  const std::size_t count = config.steps.size();
  m.times.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const auto& p = result.distributions[j];
    const auto& step = config.steps[j];
    m.times.push_back(static_cast<double>(j + 1) * config.step_length);
    m.expected_state.push_back(expected_state(p));
    m.p_immediate.push_back(p_immediate_service(p, step.servers));
    m.p_tail.push_back(p.p.back());
    m.load.push_back(step.lambda / (step.servers * step.mu));
    m.mvm_per_step.push_back(result.step_results[j].mvm_count);
    m.steady_flags.push_back(result.step_results[j].steady_detected);
  }
  return m;
}

std::vector<std::optional<double>> relative_error_series(const MeasureSeries& test,
                                                         const MeasureSeries& reference) {
  if (test.times != reference.times || test.expected_state.size() != test.times.size() ||
      reference.expected_state.size() != reference.times.size()) {
    throw std::invalid_argument("relative_error_series: series are not aligned");
  }
  std::vector<std::optional<double>> out;
  out.reserve(test.times.size());
  for (std::size_t i = 0; i < test.times.size(); ++i) {
    const double ref = reference.expected_state[i];
    const double val = test.expected_state[i];
    if (ref == 0.0) {
      out.push_back(val == 0.0 ? std::optional<double>(0.0) : std::nullopt);
    } else {
      out.push_back(std::abs(val - ref) / ref);
    }
  }
  return out;
}

}  // namespace ictmc
