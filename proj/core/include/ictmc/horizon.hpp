#pragma once

#include <vector>

#include "ictmc/model.hpp"
#include "ictmc/probability_vector.hpp"
#include "ictmc/uniformizer.hpp"

namespace ictmc {

/// How a fired steady-state detection is booked.
enum class LedgerPolicy {
  /// The step's bound replaces the running error: the substituted
  /// stationary vector does not inherit errors of earlier steps. Truncation
  /// errors of later steps add on top of it.
  reset_on_detection,
  /// Every step's charged error is added; consumed is then a strict upper
  /// bound on the accumulated error.
  additive,
};

/// Global error budget of a horizon run.
struct ErrorLedger {
  double epsilon_total = 0.0;
  double epsilon_step = 0.0;
  double consumed = 0.0;
  int remaining_steps = 0;  // including the step about to be solved
  bool detection_enabled = true;
  LedgerPolicy policy = LedgerPolicy::reset_on_detection;

  /// Books the outcome of one step and moves to the next.
  void charge(const StepResult& step);

  /// Budget that must stay reserved for plain truncation of the remaining steps.
  [[nodiscard]] double reserve() const { return remaining_steps * epsilon_step; }
};

/// Slack available to steady-state detection in the next step:
/// max(0, epsilon_total - consumed - reserve), or 0 when detection is off.
[[nodiscard]] double detection_threshold(const ErrorLedger& ledger);

struct HorizonResult {
  std::vector<ProbabilityVector> distributions;  // at the end of each step
  std::vector<StepResult> step_results;
  ErrorLedger ledger_final;
  /// Ledger value (error bound at the step boundary) after each step.
  std::vector<double> consumed_after_step;
};

/// Solves the piecewise-homogeneous chain step by step from p0.
///
/// The state space is {0..n} with n = config.max_state() for every step.
/// Each step is offered the whole remaining slack as its detection
/// threshold; the error actually charged is booked in the ledger.
[[nodiscard]] HorizonResult solve_horizon(
    const ScenarioConfig& config, const ProbabilityVector& p0,
    LedgerPolicy policy = LedgerPolicy::reset_on_detection);

}  // namespace ictmc
