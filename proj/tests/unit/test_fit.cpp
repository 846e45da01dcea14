#include "landauer_lab/errors.hpp"
#include "landauer_lab/fit.hpp"
#include "landauer_lab/random.hpp"
#include "landauer_lab/stats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace lab {
namespace {

std::vector<FitPoint> synthetic(double a, double b, std::size_t count, double noise,
                                std::uint64_t seed) {
  RandomStream s(seed, 0);
  std::vector<FitPoint> out;
  for (const double t : stats::log_grid(0.1, 20.0, count)) {
    const double mu = a * (1.0 - std::exp(-b / t));
    out.push_back({t, mu * (1.0 + noise * s.normal())});
  }
  return out;
}

TEST(Fit, RecoversNoiselessParameters) {
  const auto f = fit_saturating_exponential(synthetic(0.5, 2.0, 20, 0.0, 1));
  EXPECT_TRUE(f.converged);
  EXPECT_FALSE(f.degenerate);
  EXPECT_NEAR(f.a, 0.5, 1e-6);
  EXPECT_NEAR(f.b, 2.0, 1e-6);
  EXPECT_LT(f.residual_norm, 1e-9);
  EXPECT_NEAR(f.evaluate(3.0), 0.5 * (1.0 - std::exp(-2.0 / 3.0)), 1e-6);
}

TEST(Fit, RecoversParametersUnderOnePercentNoise) {
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const auto f = fit_saturating_exponential(synthetic(0.5, 2.0, 20, 0.01, seed));
    EXPECT_TRUE(f.converged);
    EXPECT_NEAR(f.a, 0.5, 0.05 * 0.5);
    EXPECT_NEAR(f.b, 2.0, 0.05 * 2.0);
    EXPECT_GT(f.cov_aa, 0.0);
    EXPECT_GT(f.cov_bb, 0.0);
    EXPECT_LE(f.cov_ab * f.cov_ab, f.cov_aa * f.cov_bb);
    EXPECT_GT(f.standard_error(1.0), 0.0);
  }
}

TEST(Fit, ConvergedImpliesSmallGradient) {
  const auto f = fit_saturating_exponential(synthetic(0.2, 0.7, 12, 0.02, 3));
  ASSERT_TRUE(f.converged);
  EXPECT_LT(f.gradient_norm, 1e-6);
}

TEST(Fit, AllZeroDataIsDegenerate) {
  std::vector<FitPoint> p = {{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}};
  const auto f = fit_saturating_exponential(p);
  EXPECT_TRUE(f.degenerate);
  EXPECT_EQ(f.a, 0.0);
}

TEST(Fit, NeedsThreeDistinctTemperatures) {
  std::vector<FitPoint> p = {{1.0, 0.1}, {1.0, 0.2}, {2.0, 0.3}, {2.0, 0.1}};
  EXPECT_THROW(fit_saturating_exponential(p), InvalidInput);
  p.push_back({-1.0, 0.1});
  EXPECT_THROW(fit_saturating_exponential(p), InvalidInput);
}

TEST(Fit, ResultIsIndependentOfInputOrder) {
  auto p = synthetic(0.3, 1.1, 15, 0.05, 7);
  const auto f = fit_saturating_exponential(p);
  std::reverse(p.begin(), p.end());
  std::rotate(p.begin(), p.begin() + 4, p.end());
  const auto g = fit_saturating_exponential(p);
  EXPECT_EQ(f.a, g.a);
  EXPECT_EQ(f.b, g.b);
  EXPECT_EQ(f.residual_norm, g.residual_norm);
}

}  // namespace
}  // namespace lab
