#include "ictmc/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ictmc {

namespace {

bool finite_nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

int ScenarioConfig::max_state() const {
  int max_servers = 0;
  for (const auto& step : steps) max_servers = std::max(max_servers, step.servers);
  return max_servers + queue_capacity;
}

void ScenarioConfig::validate() const {
  if (steps.empty()) throw std::invalid_argument("scenario has no steps");
  if (!(std::isfinite(step_length) && step_length > 0.0))
    throw std::invalid_argument("step length must be positive and finite");
  const double expected = static_cast<double>(steps.size()) * step_length;
  if (!(std::abs(expected - horizon) <= 1e-9 * std::max(1.0, horizon)))
    throw std::invalid_argument("horizon must equal step count times step length");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("gamma must lie in [0, 1]");
  if (!finite_nonnegative(eta)) throw std::invalid_argument("eta must be finite and >= 0");
  if (queue_capacity < 0) throw std::invalid_argument("queue capacity must be >= 0");
  if (!(std::isfinite(epsilon_step) && epsilon_step > 0.0 && epsilon_step < 1.0))
    throw std::invalid_argument("epsilon_step must lie in (0, 1)");
  const double reserve = static_cast<double>(steps.size()) * epsilon_step;
  if (!(std::isfinite(epsilon_total) && epsilon_total >= reserve))
    throw std::invalid_argument("epsilon_total must be at least steps * epsilon_step");
  for (std::size_t j = 0; j < steps.size(); ++j) {
    const auto& s = steps[j];
    if (!finite_nonnegative(s.lambda) || !(std::isfinite(s.mu) && s.mu > 0.0) ||
        s.servers < 1) {
      throw std::invalid_argument("invalid rates in step " + std::to_string(j));
    }
  }
}

BirthDeathModel build_rates(const StepProfile& profile, double gamma, double eta, int n) {
  if (!finite_nonnegative(profile.lambda) || !finite_nonnegative(profile.mu))
    throw std::invalid_argument("build_rates: rates must be finite and nonnegative");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("build_rates: gamma must lie in [0, 1]");
  if (!finite_nonnegative(eta))
    throw std::invalid_argument("build_rates: eta must be finite and nonnegative");
  if (profile.servers < 1) throw std::invalid_argument("build_rates: need at least one server");
  if (n < profile.servers)
    throw std::invalid_argument("build_rates: n is smaller than the number of servers");

  const int s = profile.servers;
  BirthDeathModel model;
  model.birth.resize(static_cast<std::size_t>(n));
  model.death.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    model.birth[k] = k <= s - 1 ? profile.lambda : gamma * profile.lambda;
  for (int k = 1; k <= n; ++k) {
    model.death[k - 1] = k <= s - 1 ? k * profile.mu : s * profile.mu + (k - s) * eta;
  }
  return model;
}

Generator build_generator(const BirthDeathModel& model) {
  if (model.death.size() != model.birth.size())
    throw std::invalid_argument("build_generator: birth and death vectors differ in length");
  for (double r : model.birth)
    if (!finite_nonnegative(r)) throw std::invalid_argument("build_generator: bad birth rate");
  for (double r : model.death)
    if (!finite_nonnegative(r)) throw std::invalid_argument("build_generator: bad death rate");

  const std::size_t states = model.states();
  Generator gen;
  gen.upper = model.birth;
  gen.lower = model.death;
  gen.diagonal.resize(states);
  double alpha = 0.0;
  for (std::size_t k = 0; k < states; ++k) {
    const double exit = model.up(k) + model.down(k);
    gen.diagonal[k] = -exit;
    alpha = std::max(alpha, exit);
  }
  gen.alpha = alpha;
  return gen;
}

}  // namespace ictmc
