#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "ictmc/uniformizer.hpp"

namespace ictmc {

double PoissonWindow::weight(std::int64_t i) const {
  if (i >= left && i <= right) return weights[static_cast<std::size_t>(i - left)];
  if (i >= leading_start && i < left) return leading[static_cast<std::size_t>(i - leading_start)];
  return 0.0;
}

PoissonWindow poisson_window(double alpha_t, double epsilon) {
  if (!(std::isfinite(alpha_t) && alpha_t >= 0.0))
    throw std::invalid_argument("poisson_window: alpha_t must be finite and nonnegative");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("poisson_window: epsilon must lie in (0, 1)");

  PoissonWindow window;
  if (alpha_t == 0.0) return window;

  // Unnormalized weights relative to the mode; terms below `cutoff` are
  // dropped, far below any tail budget.
  const double cutoff = std::max(1e-300, std::min(1e-30, epsilon * 1e-12));
  const auto mode = static_cast<std::int64_t>(std::floor(alpha_t));

  std::deque<double> w{1.0};
  std::int64_t lo = mode;
  while (lo > 0) {
    const double next = w.front() * static_cast<double>(lo) / alpha_t;
    if (next < cutoff) break;
    w.push_front(next);
    --lo;
  }
  std::int64_t hi = mode;
  for (;;) {
    const double next = w.back() * alpha_t / static_cast<double>(hi + 1);
    if (next < cutoff) break;
    w.push_back(next);
    ++hi;
  }

  // Sum each flank from its small end towards the mode.
  const std::size_t mode_pos = static_cast<std::size_t>(mode - lo);
  double below = 0.0;
  for (std::size_t i = 0; i < mode_pos; ++i) below += w[i];
  double above = 0.0;
  for (std::size_t i = w.size() - 1; i > mode_pos; --i) above += w[i];
  const double total = below + w[mode_pos] + above;
  for (double& x : w) x /= total;

  const double half = epsilon / 2.0;
  std::size_t l = 0;
  double prefix = 0.0;
  while (l < mode_pos && prefix + w[l] <= half) prefix += w[l++];
  std::size_t k = w.size() - 1;
  double suffix = 0.0;
  while (k > mode_pos && suffix + w[k] <= half) suffix += w[k--];

  window.left = lo + static_cast<std::int64_t>(l);
  window.right = lo + static_cast<std::int64_t>(k);
  window.weights.assign(w.begin() + static_cast<std::ptrdiff_t>(l),
                        w.begin() + static_cast<std::ptrdiff_t>(k) + 1);
  window.cdf_prefix = prefix;
  window.mass_deficit = prefix + suffix;
  window.leading_start = lo;
  window.leading.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(l));
  return window;
}

}  // namespace ictmc
