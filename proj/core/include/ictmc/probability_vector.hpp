#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace ictmc {

/// Distribution over {0..n}, possibly with mass removed by truncation.
///
/// `defect` records the mass the vector is known to be missing; the entries
/// then sum to at least 1 - defect.
struct ProbabilityVector {
  std::vector<double> p;
  double defect = 0.0;

  ProbabilityVector() = default;
  explicit ProbabilityVector(std::vector<double> entries, double mass_defect = 0.0)
      : p(std::move(entries)), defect(mass_defect) {}

  /// All mass on `state` in a vector of `length` entries.
  static ProbabilityVector point_mass(std::size_t length, std::size_t state = 0);

  [[nodiscard]] std::size_t size() const { return p.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return p[i]; }

  /// Sum of entries, accumulated in index order.
  [[nodiscard]] double mass() const;
  /// Largest entry (the infinity norm, since entries are nonnegative).
  [[nodiscard]] double max_entry() const;

  /// Checks nonnegativity and 1 - defect - tol <= mass <= 1 + tol.
  [[nodiscard]] bool is_valid(double tol = 1e-12) const;

  bool operator==(const ProbabilityVector&) const = default;
};

/// max_i |a_i - b_i|; sizes must match.
[[nodiscard]] double max_abs_difference(const std::vector<double>& a,
                                        const std::vector<double>& b);

}  // namespace ictmc
