#include "ictmc/probability_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ictmc {

ProbabilityVector ProbabilityVector::point_mass(std::size_t length, std::size_t state) {
  if (state >= length) throw std::invalid_argument("point_mass: state out of range");
  std::vector<double> p(length, 0.0);
  p[state] = 1.0;
  return ProbabilityVector(std::move(p));
}

double ProbabilityVector::mass() const {
  double total = 0.0;
  for (double x : p) total += x;
  return total;
}

double ProbabilityVector::max_entry() const {
  double m = 0.0;
  for (double x : p) m = std::max(m, x);
  return m;
}

bool ProbabilityVector::is_valid(double tol) const {
  if (p.empty() || !(defect >= 0.0)) return false;
  for (double x : p)
    if (!std::isfinite(x) || x < 0.0) return false;
  const double total = mass();
  return total >= 1.0 - defect - tol && total <= 1.0 + tol;
}

double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_difference: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace ictmc
