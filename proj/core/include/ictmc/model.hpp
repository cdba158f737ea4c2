#pragma once

#include <cstddef>
#include <vector>

namespace ictmc {

/// Rates that stay constant over one step of the horizon.
struct StepProfile {
  double lambda = 0.0;  // arrival rate
  double mu = 1.0;      // per-server service rate
  int servers = 1;

  bool operator==(const StepProfile&) const = default;
};

/// Full description of a piecewise-constant experiment.
///
/// Rates and durations must use one consistent time unit; the library does
/// not care which.
struct ScenarioConfig {
  double horizon = 0.0;      // total modeled period T
  double step_length = 0.0;  // length of each homogeneous step
  std::vector<StepProfile> steps;
  double gamma = 1.0;  // probability that a delayed arrival joins the queue
  double eta = 0.0;    // abandonment rate, 1 / mean patience
  int queue_capacity = 0;
  double epsilon_step = 1e-7;
  double epsilon_total = 0.0;
  bool detection_enabled = true;

  /// Largest state index n = max_j(s_j) + q, held fixed over the horizon.
  [[nodiscard]] int max_state() const;

  /// Throws std::invalid_argument when any invariant is violated.
  void validate() const;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Birth and death rates of one step on the state space {0..n}.
///
/// birth[k] is the rate k -> k+1 for k = 0..n-1 and death[k-1] is the rate
/// k -> k-1 for k = 1..n.
struct BirthDeathModel {
  std::vector<double> birth;
  std::vector<double> death;

  /// n, the largest state.
  [[nodiscard]] std::size_t size() const { return birth.size(); }
  [[nodiscard]] std::size_t states() const { return birth.size() + 1; }

  /// Rate out of state k upwards (0 for k = n).
  [[nodiscard]] double up(std::size_t k) const {
    return k < birth.size() ? birth[k] : 0.0;
  }
  /// Rate out of state k downwards (0 for k = 0).
  [[nodiscard]] double down(std::size_t k) const {
    return k == 0 ? 0.0 : death[k - 1];
  }

  bool operator==(const BirthDeathModel&) const = default;
};

/// Tridiagonal infinitesimal generator and its uniformization rate.
struct Generator {
  std::vector<double> lower;     // q(k, k-1), k = 1..n
  std::vector<double> diagonal;  // q(k, k),   k = 0..n
  std::vector<double> upper;     // q(k, k+1), k = 0..n-1
  double alpha = 0.0;

  [[nodiscard]] std::size_t states() const { return diagonal.size(); }
};

/// Rates of the queue with balking and abandonment on {0..n}.
///
/// Arrivals join at rate lambda while a server is free and at gamma * lambda
/// otherwise. Busy servers complete at mu each and each waiting customer
/// abandons at eta.
[[nodiscard]] BirthDeathModel build_rates(const StepProfile& profile,
                                          double gamma, double eta, int n);

/// alpha is the exact maximum total exit rate over all states.
[[nodiscard]] Generator build_generator(const BirthDeathModel& model);

}  // namespace ictmc
