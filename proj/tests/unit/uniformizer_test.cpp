#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ictmc/model.hpp"
#include "ictmc/stationary.hpp"
#include "ictmc/uniformizer.hpp"
#include "oracle/oracle.hpp"

namespace ictmc {
namespace {

Generator two_state() { return build_generator(build_rates({1.0, 1.0, 1}, 1.0, 0.0, 1)); }

std::vector<double> exact(const ProbabilityVector& p, const BirthDeathModel& m, double delta) {
  return oracle::expm_step(p.p, oracle::dense_generator(m.birth, m.death), delta);
}

TEST(DtmcStep, ZeroGeneratorIsIdentity) {
  const auto gen = build_generator({{0.0, 0.0}, {0.0, 0.0}});
  const ProbabilityVector p({0.2, 0.5, 0.3});
  EXPECT_EQ(dtmc_step(p, gen).p, p.p);
}

TEST(DtmcStep, TwoStateByHand) {
  // alpha = 1 makes P the swap matrix.
  const auto out = dtmc_step(ProbabilityVector::point_mass(2, 0), two_state());
  EXPECT_EQ(out[0], 0.0);
  EXPECT_EQ(out[1], 1.0);
  const auto half = dtmc_step(ProbabilityVector({0.25, 0.75}), two_state());
  EXPECT_EQ(half[0], 0.75);
  EXPECT_EQ(half[1], 0.25);
}

TEST(DtmcStep, StationaryIsFixedPoint) {
  const auto model = build_rates({17.0, 0.2, 100}, 0.97, 0.25, 150);
  const auto pi = stationary_distribution(model);
  const auto out = dtmc_step(pi, build_generator(model));
  EXPECT_LE(max_abs_difference(out.p, pi.p), 1e-14);
}

TEST(DtmcStep, DimensionMismatch) {
  EXPECT_THROW((void)dtmc_step(ProbabilityVector::point_mass(3), two_state()),
               std::invalid_argument);
}

TEST(SolveStep, StartingAtStationaryFiresImmediately) {
  const auto model = build_rates({3.0, 1.0, 4}, 0.9, 0.5, 8);
  const auto pi = stationary_distribution(model);
  const auto r = solve_step(pi, build_generator(model), 2.0, 1e-7, 1e-3, pi);
  EXPECT_TRUE(r.steady_detected);
  EXPECT_EQ(r.mvm_count, 0);
  EXPECT_EQ(r.p_out.p, pi.p);
  EXPECT_DOUBLE_EQ(r.error_charged, 1e-7);
}

TEST(SolveStep, TwoStateClosedForm) {
  const auto gen = two_state();
  const auto pi = ProbabilityVector({0.5, 0.5});
  const double eps = 1e-7;
  const auto r = solve_step(ProbabilityVector::point_mass(2, 0), gen, 1.0, eps, 0.0, pi);
  EXPECT_FALSE(r.steady_detected);
  EXPECT_NEAR(r.p_out[0], (1 + std::exp(-2.0)) / 2, eps);
  EXPECT_NEAR(r.p_out[1], (1 - std::exp(-2.0)) / 2, eps);
  EXPECT_DOUBLE_EQ(r.error_charged, eps);
  EXPECT_EQ(r.mvm_count, poisson_window(1.0, eps).right);
}

TEST(SolveStep, FullSizeStepMatchesMatrixExponential) {
  const double mu = 0.2;
  const auto model = build_rates({100 * mu * 0.85, mu, 100}, 0.97, 0.25, 150);
  const auto gen = build_generator(model);
  const auto pi = stationary_distribution(model);
  const auto p0 = ProbabilityVector::point_mass(151, 0);
  const auto r = solve_step(p0, gen, 5.0, 1e-7, 0.0, pi);
  EXPECT_LE(max_abs_difference(r.p_out.p, exact(p0, model, 5.0)), 1e-7);
  EXPECT_LE(r.p_out.defect, 1e-7);
}

TEST(SolveStep, ZeroRateStepReturnsInput) {
  const auto gen = build_generator({{0.0, 0.0}, {0.0, 0.0}});
  const ProbabilityVector p({0.25, 0.25, 0.5});
  const auto r = solve_step(p, gen, 5.0, 1e-7, 1e-2, ProbabilityVector::point_mass(3));
  EXPECT_EQ(r.p_out.p, p.p);
  EXPECT_EQ(r.mvm_count, 0);
  EXPECT_FALSE(r.steady_detected);
}

TEST(SolveStep, RejectsWrongStationaryVector) {
  const auto model = build_rates({3.0, 1.0, 4}, 0.9, 0.5, 8);
  const auto wrong = ProbabilityVector::point_mass(9, 4);
  EXPECT_THROW((void)solve_step(ProbabilityVector::point_mass(9), build_generator(model), 1.0,
                                1e-7, 0.0, wrong),
               std::invalid_argument);
}

TEST(SolveStep, RateEstimateTracksSubdominantEigenvalue) {
  // Two-state chain with P = [[1-a, a], [b, 1-b]]: the distance to pi shrinks
  // by exactly |1 - a - b| per iteration.
  const auto model = BirthDeathModel{{1.0}, {3.0}};
  const auto gen = build_generator(model);  // alpha = 3, P = [[2/3, 1/3], [1, 0]]
  const auto pi = stationary_distribution(model);
  const auto r = solve_step(ProbabilityVector::point_mass(2, 0), gen, 4.0, 1e-10, 1e-12, pi);
  ASSERT_TRUE(r.rate_estimate.has_value());
  EXPECT_NEAR(*r.rate_estimate, 1.0 / 3.0, 1e-9);
}

struct RandomStep {
  BirthDeathModel model;
  ProbabilityVector p_in;
  double delta;
};

RandomStep random_step(std::mt19937_64& rng, int max_n) {
  std::uniform_real_distribution<double> rate(0.05, 4.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> size(1, max_n);
  std::uniform_real_distribution<double> length(0.1, 10.0);
  RandomStep s;
  const int n = size(rng);
  for (int k = 0; k < n; ++k) {
    s.model.birth.push_back(rate(rng));
    s.model.death.push_back(rate(rng));
  }
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  double total = 0.0;
  for (double& x : p) total += (x = unit(rng) * unit(rng));
  for (double& x : p) x /= total;
  s.p_in = ProbabilityVector(p);
  s.delta = length(rng);
  return s;
}

TEST(SolveStepProperties, TruncationIsALowerBoundAndConservesMass) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = random_step(rng, 40);
    const auto gen = build_generator(s.model);
    const auto pi = stationary_distribution(s.model);
    const double eps = 1e-6;
    const auto r = solve_step(s.p_in, gen, s.delta, eps, 0.0, pi);
    const auto ref = exact(s.p_in, s.model, s.delta);
    for (std::size_t k = 0; k < ref.size(); ++k) {
      EXPECT_GE(r.p_out[k], 0.0);
      EXPECT_LE(r.p_out[k], ref[k] + 1e-14);
    }
    EXPECT_NEAR(r.p_out.mass() + r.p_out.defect, 1.0, 1e-12);
    EXPECT_LE(r.p_out.defect, eps);
    EXPECT_LE(max_abs_difference(r.p_out.p, ref), r.error_charged);
  }
}

TEST(SolveStepProperties, DetectionChargeDominatesTrueError) {
  std::mt19937_64 rng(5);
  int fired = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = random_step(rng, 30);
    const auto gen = build_generator(s.model);
    const auto pi = stationary_distribution(s.model);
    for (double threshold : {1e-3, 3e-2, 0.3}) {
      const auto r = solve_step(s.p_in, gen, s.delta, 1e-9, threshold, pi);
      const auto ref = exact(s.p_in, s.model, s.delta);
      EXPECT_LE(max_abs_difference(r.p_out.p, ref), r.error_charged) << trial;
      if (r.steady_detected) {
        ++fired;
        EXPECT_LE(r.error_charged, threshold * pi.max_entry() + 1e-9 + 1e-15);
        EXPECT_LE(r.mvm_count, poisson_window(gen.alpha * s.delta, 1e-9).right);
      }
    }
  }
  EXPECT_GT(fired, 20);
}

TEST(SolveStepProperties, BitDeterministic) {
  const auto model = build_rates({19.0, 0.2, 100}, 0.97, 0.25, 150);
  const auto gen = build_generator(model);
  const auto pi = stationary_distribution(model);
  const auto p0 = ProbabilityVector::point_mass(151, 60);
  const auto a = solve_step(p0, gen, 5.0, 1e-7, 0.5, pi);
  const auto b = solve_step(p0, gen, 5.0, 1e-7, 0.5, pi);
  EXPECT_EQ(a.p_out, b.p_out);
  EXPECT_EQ(a.mvm_count, b.mvm_count);
  EXPECT_EQ(a.error_charged, b.error_charged);
}

}  // namespace
}  // namespace ictmc
