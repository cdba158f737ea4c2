#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ictmc/model.hpp"
#include "ictmc/probability_vector.hpp"

namespace ictmc {

/// Truncated Poisson(alpha_t) weights used by one uniformization step.
///
/// `weights[i - left]` is the probability of i events for left <= i <= right.
/// Weights of i < left that did not underflow are kept in `leading`
/// (`leading[i - leading_start]`) because steady-state detection needs them.
struct PoissonWindow {
  std::int64_t left = 0;
  std::int64_t right = 0;
  std::vector<double> weights{1.0};
  double mass_deficit = 0.0;  // 1 - sum(weights)
  double cdf_prefix = 0.0;    // mass of i < left

  std::int64_t leading_start = 0;
  std::vector<double> leading;

  /// Poisson probability of i events, or 0 outside the computed range.
  [[nodiscard]] double weight(std::int64_t i) const;
};

/// Window [l, k] with the left and right tails each holding at most
/// epsilon / 2 of the mass; l is as large and k as small as possible.
///
/// Weights are generated outward from the mode and normalized against their
/// own sum, so there is no underflow of e^{-alpha_t} for large alpha_t.
[[nodiscard]] PoissonWindow poisson_window(double alpha_t, double epsilon);

/// Matrix-vector product p * (I + Q / alpha) for a tridiagonal generator.
[[nodiscard]] ProbabilityVector dtmc_step(const ProbabilityVector& p, const Generator& gen);

/// Output of one homogeneous step.
struct StepResult {
  ProbabilityVector p_out;
  std::int64_t mvm_count = 0;
  bool steady_detected = false;
  double error_charged = 0.0;
  /// Median contraction d_i / d_{i-1} of the distance to the stationary
  /// vector, an estimate of the subdominant eigenvalue modulus.
  std::optional<double> rate_estimate;
  /// Relative change max_j |x_j(S) - x_j(S-1)| / x_j(S) at the stopping
  /// iteration S. Diagnostic only.
  std::optional<double> relative_iterate_change;
  /// Detection statistic (bound / max entry of pi_inf) at the stopping iteration.
  std::optional<double> detection_statistic;
};

/// Advances p_in over a step of length `delta` by truncated uniformization.
///
/// With delta_threshold > 0 the distance d_i = ||x_i - pi_inf||_inf of every
/// DTMC iterate is tracked together with the mixture bound
///   B_i = sum_{j<=i} beta_j d_j + (1 - sum_{j<=i} beta_j) d_i.
/// Once B_i / max(pi_inf) <= delta_threshold and d has not increased over
/// the last min(i, 5) iterations, the step returns pi_inf and charges
/// B_i + epsilon_step. Otherwise the truncated Poisson sum is returned and
/// epsilon_step is charged.
///
/// Throws std::invalid_argument if pi_inf is not a fixed point of the
/// uniformized chain to 1e-10.
[[nodiscard]] StepResult solve_step(const ProbabilityVector& p_in, const Generator& gen,
                                    double delta, double epsilon_step, double delta_threshold,
                                    const ProbabilityVector& pi_inf);

}  // namespace ictmc
