#include "ictmc/horizon.hpp"

#include <algorithm>
#include <stdexcept>

#include "ictmc/stationary.hpp"

namespace ictmc {

double detection_threshold(const ErrorLedger& ledger) {
  if (!ledger.detection_enabled) return 0.0;
  return std::max(0.0, ledger.epsilon_total - ledger.consumed - ledger.reserve());
}

void ErrorLedger::charge(const StepResult& step) {
  if (policy == LedgerPolicy::reset_on_detection && step.steady_detected) {
    consumed = step.error_charged;
  } else {
    consumed += step.error_charged;
  }
  --remaining_steps;
}

HorizonResult solve_horizon(const ScenarioConfig& config, const ProbabilityVector& p0,
                            LedgerPolicy policy) {
  config.validate();
  const int n = config.max_state();
  if (p0.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("solve_horizon: initial vector has the wrong length");
  if (!p0.is_valid()) throw std::invalid_argument("solve_horizon: invalid initial vector");

  HorizonResult out;
  out.distributions.reserve(config.steps.size());
  out.step_results.reserve(config.steps.size());
  out.consumed_after_step.reserve(config.steps.size());

  ErrorLedger ledger{config.epsilon_total, config.epsilon_step, 0.0,
                     static_cast<int>(config.steps.size()), config.detection_enabled, policy};

  ProbabilityVector current = p0;
  ProbabilityVector pi_inf;
  for (std::size_t j = 0; j < config.steps.size(); ++j) {
    const StepProfile& profile = config.steps[j];
    const BirthDeathModel model = build_rates(profile, config.gamma, config.eta, n);
    const Generator gen = build_generator(model);
    if (j == 0 || !(profile == config.steps[j - 1])) pi_inf = stationary_distribution(model);

    StepResult step = solve_step(current, gen, config.step_length, config.epsilon_step,
                                 detection_threshold(ledger), pi_inf);
    ledger.charge(step);

    current = step.p_out;
    out.distributions.push_back(step.p_out);
    out.step_results.push_back(std::move(step));
    out.consumed_after_step.push_back(ledger.consumed);
  }
  out.ledger_final = ledger;
  return out;
}

}  // namespace ictmc
