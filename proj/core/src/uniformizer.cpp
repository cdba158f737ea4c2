#include "ictmc/uniformizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ictmc {

namespace {

constexpr double kFixedPointTolerance = 1e-10;
constexpr std::size_t kMonotoneWindow = 5;

/// Columns of P = I + Q / alpha stored as three bands.
struct UniformizedKernel {
  std::vector<double> stay;  // 1 + q(k,k) / alpha
  std::vector<double> from_below;  // q(k-1,k) / alpha, indexed by target k
  std::vector<double> from_above;  // q(k+1,k) / alpha, indexed by target k

  explicit UniformizedKernel(const Generator& gen) {
    const std::size_t n = gen.states();
    stay.resize(n);
    from_below.assign(n, 0.0);
    from_above.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      stay[k] = std::max(0.0, 1.0 + gen.diagonal[k] / gen.alpha);
      if (k > 0) from_below[k] = gen.upper[k - 1] / gen.alpha;
      if (k + 1 < n) from_above[k] = gen.lower[k] / gen.alpha;
    }
  }

  // out = in * P
  void apply(const std::vector<double>& in, std::vector<double>& out) const {
    const std::size_t n = in.size();
    if (n == 1) {
      out[0] = in[0] * stay[0];
      return;
    }
    out[0] = in[0] * stay[0] + in[1] * from_above[0];
    for (std::size_t k = 1; k + 1 < n; ++k)
      out[k] = in[k - 1] * from_below[k] + in[k] * stay[k] + in[k + 1] * from_above[k];
    out[n - 1] = in[n - 2] * from_below[n - 1] + in[n - 1] * stay[n - 1];
  }
};

// max_i |a_i - b_i| with independent lanes so the reduction is not one
// long dependency chain. max is exact, so the result does not depend on
// the lane split.
double distance_inf(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (std::size_t k = 0; k < 4; ++k) {
      const double d = std::abs(a[i + k] - b[i + k]);
      lane[k] = d > lane[k] ? d : lane[k];
    }
  for (; i < n; ++i) {
    const double d = std::abs(a[i] - b[i]);
    lane[0] = d > lane[0] ? d : lane[0];
  }
  return std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
}

void check_generator(const Generator& gen) {
  const std::size_t n = gen.states();
  if (n == 0 || gen.lower.size() + 1 != n || gen.upper.size() + 1 != n)
    throw std::invalid_argument("malformed generator");
}

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

double relative_change(const std::vector<double>& now, const std::vector<double>& before) {
  double worst = 0.0;
  for (std::size_t j = 0; j < now.size(); ++j) {
    const double diff = std::abs(now[j] - before[j]);
    if (now[j] != 0.0) {
      worst = std::max(worst, diff / std::abs(now[j]));
    } else if (diff != 0.0) {
      return HUGE_VAL;
    }
  }
  return worst;
}

}  // namespace

ProbabilityVector dtmc_step(const ProbabilityVector& p, const Generator& gen) {
  check_generator(gen);
  if (p.size() != gen.states()) throw std::invalid_argument("dtmc_step: dimension mismatch");
  if (gen.alpha == 0.0) return p;
  const UniformizedKernel kernel(gen);
  ProbabilityVector out(std::vector<double>(p.size()), p.defect);
  kernel.apply(p.p, out.p);
  return out;
}

StepResult solve_step(const ProbabilityVector& p_in, const Generator& gen, double delta,
                      double epsilon_step, double delta_threshold,
                      const ProbabilityVector& pi_inf) {
  check_generator(gen);
  const std::size_t n = gen.states();
  if (p_in.size() != n || pi_inf.size() != n)
    throw std::invalid_argument("solve_step: dimension mismatch");
  if (!(std::isfinite(delta) && delta >= 0.0))
    throw std::invalid_argument("solve_step: delta must be finite and nonnegative");
  if (!(delta_threshold >= 0.0))
    throw std::invalid_argument("solve_step: detection threshold must be nonnegative");

  StepResult result;
  if (gen.alpha == 0.0 || delta == 0.0) {
    result.p_out = p_in;
    return result;
  }

  const UniformizedKernel kernel(gen);
  std::vector<double> current = p_in.p;
  std::vector<double> next(n);

  kernel.apply(pi_inf.p, next);
  if (max_abs_difference(next, pi_inf.p) > kFixedPointTolerance)
    throw std::invalid_argument("solve_step: pi_inf is not stationary for this generator");

  const PoissonWindow window = poisson_window(gen.alpha * delta, epsilon_step);
  const bool detect = delta_threshold > 0.0;
  const double peak = pi_inf.max_entry();

  std::vector<double> accumulated(n, 0.0);
  std::vector<double> distance;
  if (detect) distance.reserve(static_cast<std::size_t>(window.right) + 1);
  double cumulative_weight = 0.0;
  double mixture = 0.0;

  for (std::int64_t i = 0; i <= window.right; ++i) {
    if (i > 0) {
      kernel.apply(current, next);
      current.swap(next);
    }

    if (detect) {
      const double d = distance_inf(current, pi_inf.p);
      distance.push_back(d);
      const double beta = window.weight(i);
      cumulative_weight += beta;
      mixture += beta * d;
      const double bound = mixture + std::max(0.0, 1.0 - cumulative_weight) * d;

      const std::size_t span = std::min(static_cast<std::size_t>(i), kMonotoneWindow);
      bool settled = true;
      for (std::size_t back = 0; back < span; ++back) {
        const std::size_t at = distance.size() - 1 - back;
        if (distance[at] > distance[at - 1]) {
          settled = false;
          break;
        }
      }

      result.detection_statistic = bound / peak;
      if (settled && bound / peak <= delta_threshold) {
        result.p_out = pi_inf;
        result.p_out.defect = 0.0;
        result.mvm_count = i;
        result.steady_detected = true;
        result.error_charged = bound + epsilon_step;
        if (i > 0) result.relative_iterate_change = relative_change(current, next);
        break;
      }
    }

    if (i >= window.left) {
      const double beta = window.weights[static_cast<std::size_t>(i - window.left)];
      for (std::size_t j = 0; j < n; ++j) accumulated[j] += beta * current[j];
    }
  }

  if (!result.steady_detected) {
    result.p_out = ProbabilityVector(std::move(accumulated),
                                     p_in.defect + window.mass_deficit * p_in.mass());
    result.mvm_count = window.right;
    result.error_charged = epsilon_step;
    if (window.right > 0) result.relative_iterate_change = relative_change(current, next);
  }

  if (distance.size() >= 4) {
    std::vector<double> ratios;
    ratios.reserve(distance.size() - 1);
    for (std::size_t i = 1; i < distance.size(); ++i)
      if (distance[i - 1] > 0.0) ratios.push_back(distance[i] / distance[i - 1]);
    if (ratios.size() >= 3) result.rate_estimate = median(std::move(ratios));
  }
  return result;
}

}  // namespace ictmc
