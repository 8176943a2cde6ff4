#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "cupset/decay_fit.hpp"
#include "cupset/errors.hpp"
#include "cupset/rng.hpp"

using namespace cupset;

namespace {

std::vector<double> lengths(int n) {
  std::vector<double> xs;
  for (int k = 1; k <= n; ++k) xs.push_back(k);
  return xs;
}

std::vector<double> curve(const std::vector<double>& xs, double c0, double c1, double s) {
  std::vector<double> ys;
  for (double x : xs) ys.push_back(c0 + c1 * std::pow(s, x - 1.0));
  return ys;
}

double direct_rss(const DecayFit& f) {
  double r = 0;
  for (std::size_t i = 0; i < f.xs.size(); ++i) {
    const double e = f.ys[i] - (f.c0 + f.c1 * std::pow(f.s, f.xs[i] - 1.0));
    r += e * e;
  }
  return r;
}

}  // namespace

TEST(DecayFit, ExactPureDecay) {
  const auto xs = lengths(10);
  const DecayFit f = fit_decay(xs, curve(xs, 0.0, 0.9, 0.5), false);
  EXPECT_NEAR(f.s, 0.5, 1e-9);
  EXPECT_NEAR(f.c1, 0.9, 1e-9);
  EXPECT_EQ(f.c0, 0.0);
  EXPECT_LT(f.residual, 1e-18);
}

TEST(DecayFit, ExactDecayWithOffset) {
  const auto xs = lengths(10);
  const DecayFit f = fit_decay(xs, curve(xs, 0.1, 0.8, 0.33), true);
  EXPECT_NEAR(f.s, 0.33, 1e-6);
  EXPECT_NEAR(f.c0, 0.1, 1e-6);
  EXPECT_NEAR(f.c1, 0.8, 1e-6);
}

TEST(DecayFit, RecoversRatesAcrossRange) {
  const auto xs = lengths(8);
  for (double s : {0.0, 0.05, 0.2, 0.5, 0.8, 0.95, 0.999, 1.0}) {
    const DecayFit f = fit_decay(xs, curve(xs, 0.0, 1.3, s), false);
    EXPECT_NEAR(f.s, s, 1e-8) << s;
  }
}

TEST(DecayFit, NoisyCoverageNoOffset) {
  SeededRng rng(11);
  const auto xs = lengths(10);
  int covered = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    auto ys = curve(xs, 0.0, 0.9, 0.7);
    for (double& y : ys) y += 0.005 * rng.normal();
    const DecayFit f = fit_decay(xs, ys, false);
    if (std::abs(f.s - 0.7) <= 3.0 * f.s_stderr) ++covered;
  }
  EXPECT_GE(covered, static_cast<int>(0.95 * trials));
}

TEST(DecayFit, NoisyCoverageWithOffset) {
  SeededRng rng(12);
  const auto xs = lengths(10);
  int covered = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    auto ys = curve(xs, 0.1, 0.8, 0.6);
    for (double& y : ys) y += 0.005 * rng.normal();
    const DecayFit f = fit_decay(xs, ys, true);
    if (std::abs(f.s - 0.6) <= 3.0 * f.s_stderr) ++covered;
  }
  EXPECT_GE(covered, static_cast<int>(0.95 * trials));
}

TEST(DecayFit, ConstantDataIsFlagged) {
  const auto xs = lengths(6);
  const DecayFit f = fit_decay(xs, std::vector<double>(6, 0.4), true);
  EXPECT_EQ(f.s, 1.0);
  EXPECT_TRUE(std::isinf(f.s_stderr));
  EXPECT_NEAR(f.c0 + f.c1, 0.4, 1e-15);

  const DecayFit z = fit_decay(xs, std::vector<double>(6, 0.0), false);
  EXPECT_TRUE(std::isinf(z.s_stderr));
}

TEST(DecayFit, ConstantWithoutOffsetIsUnitRate) {
  const auto xs = lengths(6);
  const DecayFit f = fit_decay(xs, std::vector<double>(6, 0.4), false);
  EXPECT_NEAR(f.s, 1.0, 1e-12);
  EXPECT_NEAR(f.c1, 0.4, 1e-12);
}

TEST(DecayFit, FlatNoisyDataWithOffsetSelectsConstant) {
  SeededRng rng(3);
  const auto xs = lengths(10);
  int flat = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> ys(10);
    for (double& y : ys) y = 0.33 + 0.01 * rng.normal();
    const DecayFit f = fit_decay(xs, ys, true);
    if (f.s == 1.0 && std::isinf(f.s_stderr)) ++flat;
  }
  // 1% test level: expect about 198 of 200.
  EXPECT_GE(flat, 190);
}

TEST(DecayFit, GrowthIsClippedToUnitRate) {
  const auto xs = lengths(6);
  const DecayFit f = fit_decay(xs, curve(xs, 0.0, 0.5, 1.03), false);
  EXPECT_EQ(f.s, 1.0);
  EXPECT_NEAR(f.residual, direct_rss(f), 1e-14);
}

TEST(DecayFit, ResidualMatchesCurve) {
  SeededRng rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto xs = lengths(3 + static_cast<int>(rng.index(8)));
    std::vector<double> ys;
    for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(rng.uniform());
    const bool off = t % 2 == 0;
    const DecayFit f = fit_decay(xs, ys, off);
    EXPECT_GE(f.s, 0.0);
    EXPECT_LE(f.s, 1.0 + 1e-6);
    EXPECT_GE(f.residual, 0.0);
    EXPECT_GE(f.s_stderr, 0.0);
    EXPECT_NEAR(f.residual, direct_rss(f), 1e-12 * (1.0 + f.residual));
    if (!off) EXPECT_EQ(f.c0, 0.0);
  }
}

TEST(DecayFit, BadInputsThrowWithData) {
  EXPECT_THROW(fit_decay({1, 2}, {1.0, 0.5}, false), FitError);
  EXPECT_THROW(fit_decay({1, 2, 3}, {1.0, 0.5}, false), FitError);
  try {
    fit_decay({1, 2, 3}, {1.0, std::numeric_limits<double>::quiet_NaN(), 0.2}, true);
    FAIL() << "expected FitError";
  } catch (const FitError& e) {
    ASSERT_EQ(e.ys().size(), 3u);
    EXPECT_EQ(e.xs()[2], 3.0);
  }
}

TEST(DecayFit, PointStderrMatchesMonteCarloSpread) {
  // Noise shrinking with length, as for fast decays measured over random sequences.
  const auto xs = lengths(10);
  std::vector<double> sigma;
  for (double x : xs) sigma.push_back(0.02 * std::pow(0.6, x - 1.0) + 0.001);
  SeededRng rng(21);
  const int trials = 2000;
  double sum = 0, sum_sq = 0, mean_se = 0, mean_resid_se = 0;
  for (int t = 0; t < trials; ++t) {
    auto ys = curve(xs, 0.0, 0.9, 0.5);
    for (std::size_t i = 0; i < ys.size(); ++i) ys[i] += sigma[i] * rng.normal();
    DecayFit f = fit_decay(xs, ys, false);
    mean_resid_se += f.s_stderr / trials;
    f.y_stderr = sigma;
    mean_se += rate_stderr_from_points(f) / trials;
    sum += f.s;
    sum_sq += f.s * f.s;
  }
  const double spread = std::sqrt(sum_sq / trials - (sum / trials) * (sum / trials));
  EXPECT_NEAR(mean_se / spread, 1.0, 0.1);
  // Pooled residuals understate the spread when noise is uneven.
  EXPECT_LT(mean_resid_se, 0.8 * spread);
}

TEST(DecayFit, PointStderrEdgeCases) {
  const auto xs = lengths(5);
  DecayFit f = fit_decay(xs, curve(xs, 0.0, 1.0, 0.7), false);
  EXPECT_THROW(rate_stderr_from_points(f), DimensionError);
  f.y_stderr.assign(5, 0.0);
  EXPECT_EQ(rate_stderr_from_points(f), 0.0);
  DecayFit flat = fit_decay(xs, std::vector<double>(5, 0.3), true);
  flat.y_stderr.assign(5, 0.01);
  EXPECT_TRUE(std::isinf(rate_stderr_from_points(flat)));
}
