#include "ictmc/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ictmc/error.hpp"

namespace ictmc {

namespace {

// Terms are kept relative to a block scale that is reset every kBlock terms
// or whenever the running term leaves [kSmall, kLarge].
constexpr std::size_t kBlock = 64;
constexpr double kLarge = 1e200;
constexpr double kSmall = 1e-200;

}  // namespace

ProbabilityVector stationary_distribution(const BirthDeathModel& model) {
  const std::size_t states = model.states();
  std::vector<double> value(states);
  std::vector<double> log_scale(states);

  double term = 1.0;
  double scale = 0.0;  // log of the factor divided out of `term` so far
  value[0] = 1.0;
  log_scale[0] = 0.0;
  for (std::size_t k = 0; k + 1 < states; ++k) {
    const double b = model.birth[k];
    const double d = model.death[k];
    if (term > 0.0 && b > 0.0) {
      if (!(d > 0.0)) {
        throw NumericalError("stationary_distribution: state " + std::to_string(k + 1) +
                             " is entered but has no death rate; chain is not irreducible");
      }
      term *= b / d;
    } else {
      term = 0.0;
    }
    if (term > 0.0 && ((k + 1) % kBlock == 0 || term > kLarge || term < kSmall)) {
      scale += std::log(term);
      term = 1.0;
    }
    value[k + 1] = term;
    log_scale[k + 1] = scale;
  }

  // Rescale every block against the largest term.
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < states; ++k)
    if (value[k] > 0.0) peak = std::max(peak, log_scale[k] + std::log(value[k]));

  std::vector<double> pi(states, 0.0);
  for (std::size_t k = 0; k < states; ++k)
    if (value[k] > 0.0) {
      const double shift = log_scale[k] - peak;
      pi[k] = shift > -700.0 ? value[k] * std::exp(shift) : std::exp(shift + std::log(value[k]));
    }

  double total = 0.0;
  for (double x : pi) total += x;
  if (!(std::isfinite(total) && total > 0.0))
    throw NumericalError("stationary_distribution: normalization failed");
  for (double& x : pi) x /= total;
  return ProbabilityVector(std::move(pi));
}

}  // namespace ictmc
