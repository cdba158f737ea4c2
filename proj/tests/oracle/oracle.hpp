#pragma once

#include <cstddef>
#include <vector>

// Dense brute-force references. Nothing here shares code with the solver.
namespace ictmc::oracle {

inline constexpr std::size_t kMaxDimension = 500;

/// Row-major square matrix, dimension capped at kMaxDimension.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t dim);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

/// Dense generator of a birth-death chain given birth[k] (k -> k+1) and
/// death[k] (k+1 -> k).
[[nodiscard]] DenseMatrix dense_generator(const std::vector<double>& birth,
                                          const std::vector<double>& death);

/// p * exp(Q * delta) via scaling and squaring of a Taylor polynomial.
[[nodiscard]] std::vector<double> expm_step(const std::vector<double>& p, const DenseMatrix& q,
                                            double delta);

/// Solves pi Q = 0, sum(pi) = 1 by GTH elimination on the dense matrix.
/// Throws std::runtime_error for a chain that is not irreducible.
[[nodiscard]] std::vector<double> dense_stationary(const DenseMatrix& q);

/// P(X <= k) for X ~ Poisson(alpha_t).
[[nodiscard]] double poisson_cdf_reference(double alpha_t, long long k);

/// P(X > k) for X ~ Poisson(alpha_t), without cancellation.
[[nodiscard]] double poisson_upper_tail_reference(double alpha_t, long long k);

}  // namespace ictmc::oracle
