#include <cmath>

#include <gtest/gtest.h>

#include "cli/day_scenario.hpp"
#include "ictmc/horizon.hpp"
#include "ictmc/stationary.hpp"

namespace ictmc {
namespace {

TEST(DetectionThreshold, RemainingSlack) {
  ErrorLedger ledger{3e-2, 1e-7, 1e-3, 100, true};
  EXPECT_NEAR(detection_threshold(ledger), 2.899e-2, 1e-15);
}

TEST(DetectionThreshold, ExhaustedBudget) {
  ErrorLedger ledger{3e-2, 1e-7, 3e-2, 10, true};
  EXPECT_EQ(detection_threshold(ledger), 0.0);
}

TEST(DetectionThreshold, NoSlackWhenBudgetEqualsTruncation) {
  ErrorLedger ledger{288 * 1e-7, 1e-7, 0.0, 288, true};
  EXPECT_EQ(detection_threshold(ledger), 0.0);
}

TEST(DetectionThreshold, DisabledDetection) {
  ErrorLedger ledger{3e-2, 1e-7, 0.0, 10, false};
  EXPECT_EQ(detection_threshold(ledger), 0.0);
}

TEST(ErrorLedger, Policies) {
  StepResult detected;
  detected.steady_detected = true;
  detected.error_charged = 2e-3;
  StepResult truncated;
  truncated.error_charged = 1e-7;

  ErrorLedger additive{3e-2, 1e-7, 5e-3, 3, true, LedgerPolicy::additive};
  additive.charge(detected);
  additive.charge(truncated);
  EXPECT_DOUBLE_EQ(additive.consumed, 5e-3 + 2e-3 + 1e-7);
  EXPECT_EQ(additive.remaining_steps, 1);

  ErrorLedger reset{3e-2, 1e-7, 5e-3, 3, true, LedgerPolicy::reset_on_detection};
  reset.charge(detected);
  EXPECT_DOUBLE_EQ(reset.consumed, 2e-3);
  reset.charge(truncated);
  EXPECT_DOUBLE_EQ(reset.consumed, 2e-3 + 1e-7);
}

ScenarioConfig two_state_config(int steps) {
  ScenarioConfig c;
  c.steps.assign(static_cast<std::size_t>(steps), StepProfile{1.0, 1.0, 1});
  c.step_length = 1.0;
  c.horizon = steps;
  c.gamma = 1.0;
  c.eta = 0.0;
  c.queue_capacity = 0;
  c.epsilon_step = 1e-7;
  c.epsilon_total = steps * 1e-7;
  c.detection_enabled = false;
  return c;
}

TEST(SolveHorizon, SingleStepEqualsSolveStep) {
  const auto config = two_state_config(1);
  const auto p0 = ProbabilityVector::point_mass(2, 0);
  const auto h = solve_horizon(config, p0);
  const auto model = build_rates(config.steps[0], 1.0, 0.0, 1);
  const auto r = solve_step(p0, build_generator(model), 1.0, 1e-7, 0.0,
                            stationary_distribution(model));
  ASSERT_EQ(h.distributions.size(), 1u);
  EXPECT_EQ(h.distributions[0], r.p_out);
  EXPECT_EQ(h.step_results[0].mvm_count, r.mvm_count);
  EXPECT_EQ(h.ledger_final.consumed, r.error_charged);
}

TEST(SolveHorizon, RejectsMismatchedInitialVector) {
  EXPECT_THROW((void)solve_horizon(two_state_config(2), ProbabilityVector::point_mass(3)),
               std::invalid_argument);
}

TEST(SolveHorizon, BaselineBudgetIsStepsTimesStepError) {
  cli::DayScenarioOptions o;
  o.servers = 30;
  o.queue_capacity = 24;
  o.epsilon_step = 1e-5;
  o.epsilon_total = 288 * 1e-5;
  o.detection = false;
  const auto config = cli::generate_day_scenario(o);
  const auto h = solve_horizon(config, ProbabilityVector::point_mass(55, 0));
  EXPECT_EQ(h.distributions.size(), 288u);
  EXPECT_NEAR(h.ledger_final.consumed, 2.88e-3, 1e-15);
  for (const auto& s : h.step_results) EXPECT_FALSE(s.steady_detected);
}

class HorizonPolicies : public ::testing::TestWithParam<LedgerPolicy> {};

TEST_P(HorizonPolicies, LedgerStaysWithinBudget) {
  cli::DayScenarioOptions o;
  o.servers = 30;
  o.queue_capacity = 24;
  o.epsilon_total = 3e-2;
  const auto config = cli::generate_day_scenario(o);
  const auto h = solve_horizon(config, ProbabilityVector::point_mass(55, 0), GetParam());
  EXPECT_LE(h.ledger_final.consumed, config.epsilon_total);
  for (std::size_t j = 0; j < h.consumed_after_step.size(); ++j) {
    const double reserve = static_cast<double>(288 - j - 1) * config.epsilon_step;
    EXPECT_LE(h.consumed_after_step[j] + reserve, config.epsilon_total * (1 + 1e-12));
  }
  int detected = 0;
  for (const auto& s : h.step_results) detected += s.steady_detected ? 1 : 0;
  EXPECT_GT(detected, 0);
}

INSTANTIATE_TEST_SUITE_P(Both, HorizonPolicies,
                         ::testing::Values(LedgerPolicy::reset_on_detection,
                                           LedgerPolicy::additive));

TEST(SolveHorizon, AdditiveLedgerIsTheSumOfCharges) {
  cli::DayScenarioOptions o;
  o.servers = 30;
  o.queue_capacity = 24;
  o.epsilon_total = 1.5e-2;
  const auto config = cli::generate_day_scenario(o);
  const auto h = solve_horizon(config, ProbabilityVector::point_mass(55, 0), LedgerPolicy::additive);
  double sum = 0.0;
  for (const auto& s : h.step_results) sum += s.error_charged;
  EXPECT_EQ(h.ledger_final.consumed, sum);
}

TEST(SolveHorizon, DisabledDetectionIgnoresTotalBudget) {
  cli::DayScenarioOptions o;
  o.servers = 30;
  o.queue_capacity = 24;
  o.detection = false;
  o.epsilon_total = 3e-2;
  const auto a = solve_horizon(cli::generate_day_scenario(o), ProbabilityVector::point_mass(55));
  o.epsilon_total = 5e-2;
  const auto b = solve_horizon(cli::generate_day_scenario(o), ProbabilityVector::point_mass(55));
  EXPECT_EQ(a.distributions, b.distributions);
}

TEST(SolveHorizon, RelativeIterateChangeBelowThresholdOnDetection) {
  for (double eps_total : {5e-3, 3e-2}) {
    const auto config = cli::generate_day_scenario("150", "wide", 0.97, 4.0, 1e-7, eps_total);
    const auto h = solve_horizon(config, ProbabilityVector::point_mass(151));
    const int steps = static_cast<int>(config.steps.size());
    int checked = 0;
    for (int j = 0; j < steps; ++j) {
      const auto& r = h.step_results[j];
      // At i = 0 there is no previous iterate to compare with.
      if (!r.steady_detected || r.mvm_count == 0) continue;
      ErrorLedger before{eps_total, 1e-7, j == 0 ? 0.0 : h.consumed_after_step[j - 1], steps - j};
      ASSERT_TRUE(r.relative_iterate_change.has_value());
      EXPECT_LE(*r.relative_iterate_change, detection_threshold(before)) << "step " << j;
      ++checked;
    }
    EXPECT_GT(checked, 20);
  }
}

}  // namespace
}  // namespace ictmc
