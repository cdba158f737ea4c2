#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ictmc/horizon.hpp"
#include "ictmc/model.hpp"
#include "ictmc/probability_vector.hpp"

namespace ictmc {

/// Performance measures at the step boundaries t_1..t_J.
struct MeasureSeries {
  std::vector<double> times;
  std::vector<double> expected_state;
  std::vector<double> p_immediate;
  std::vector<double> p_tail;
  std::vector<double> load;
  std::vector<std::int64_t> mvm_per_step;
  std::vector<bool> steady_flags;
};

/// ES = sum_i i * p_i.
[[nodiscard]] double expected_state(const ProbabilityVector& p);

/// Probability that an arriving customer finds a free server,
/// sum_{k < servers} p_k (Poisson arrivals see time averages).
[[nodiscard]] double p_immediate_service(const ProbabilityVector& p, int servers);

/// max over the series of the probability of the last state.
[[nodiscard]] double max_tail_probability(const std::vector<ProbabilityVector>& series);

/// Measures for every step of a solved horizon.
[[nodiscard]] MeasureSeries compute_measures(const ScenarioConfig& config,
                                             const HorizonResult& result);

/// |ES_test - ES_ref| / ES_ref per time point. Entries where ES_ref = 0 and
/// ES_test != 0 have no relative error and are returned empty.
[[nodiscard]] std::vector<std::optional<double>> relative_error_series(
    const MeasureSeries& test, const MeasureSeries& reference);

}  // namespace ictmc
