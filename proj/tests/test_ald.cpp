#include <gtest/gtest.h>

#include <cmath>

#include "gasald/ald.hpp"
#include "gasald/error.hpp"
#include "gasald/random.hpp"
#include "gasald/stats.hpp"
#include "oracles.hpp"

using namespace gasald;
using gasald::testing::ald_expectation;
using gasald::testing::ald_lower_integral;

namespace {

AldParams random_params(Rng& rng) {
  return {2.0 * rng.uniform() - 1.0, std::exp(std::log(0.2) + rng.uniform() * std::log(25.0)),
          std::exp(std::log(0.4) + rng.uniform() * std::log(6.25))};
}

}  // namespace

TEST(Ald, StandardSymmetricQuantileAndShortfall) {
  const AldParams p{0.0, 1.0, 1.0};
  EXPECT_NEAR(ald::quantile(0.01, p), -3.912023, 1e-6);
  EXPECT_NEAR(ald::tail_expectation(0.01, p), -4.912023, 1e-6);
  EXPECT_DOUBLE_EQ(ald::cdf(0.0, p), 0.5);
  EXPECT_DOUBLE_EQ(ald::pdf(0.0, p), 0.5);
}

TEST(Ald, LowerMassIsCdfAtLocation) {
  const AldParams p{0.3, 2.0, 1.7};
  EXPECT_NEAR(ald::lower_mass(p), 1.7 * 1.7 / (1.0 + 1.7 * 1.7), 1e-15);
  EXPECT_NEAR(ald::cdf(0.3, p), ald::lower_mass(p), 1e-15);
}

TEST(Ald, DensityIntegratesToOne) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_params(rng);
    EXPECT_NEAR(ald_expectation([](double) { return 1.0; }, p), 1.0, 1e-8);
  }
}

TEST(Ald, CdfMatchesIntegratedDensity) {
  Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    const auto p = random_params(rng);
    const double x = p.mu + p.sigma * (4.0 * rng.uniform() - 2.0);
    EXPECT_NEAR(ald_lower_integral([](double) { return 1.0; }, p, x), ald::cdf(x, p), 1e-9);
  }
}

TEST(Ald, QuantileInvertsCdf) {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_params(rng);
    const double a = rng.uniform();
    EXPECT_NEAR(ald::cdf(ald::quantile(a, p), p), a, 1e-12);
  }
}

TEST(Ald, MomentsMatchQuadrature) {
  Rng rng(14);
  for (int i = 0; i < 30; ++i) {
    const auto p = random_params(rng);
    const auto m = ald::moments(p);
    const double mean = ald_expectation([](double x) { return x; }, p);
    auto central = [&](int k) {
      return ald_expectation([&](double x) { return std::pow(x - mean, k); }, p);
    };
    const double var = central(2);
    EXPECT_NEAR(m.mean, mean, 1e-8 * std::max(1.0, std::abs(mean)));
    EXPECT_NEAR(m.variance, var, 1e-7 * var);
    EXPECT_NEAR(m.skewness, central(3) / std::pow(var, 1.5), 1e-6);
    EXPECT_NEAR(m.excess_kurtosis, central(4) / (var * var) - 3.0, 1e-6);
  }
}

TEST(Ald, SymmetricCaseHasNoSkew) {
  const auto m = ald::moments({0.0, 2.0, 1.0});
  EXPECT_DOUBLE_EQ(m.skewness, 0.0);
  EXPECT_NEAR(m.excess_kurtosis, 3.0, 1e-12);
  EXPECT_NEAR(m.variance, 8.0, 1e-12);
}

TEST(Ald, ShortfallMatchesQuadratureOnBothBranches) {
  Rng rng(15);
  for (int i = 0; i < 60; ++i) {
    const auto p = random_params(rng);
    // Half the levels above the mass below mu, exercising the upper branch.
    const double a = i % 2 == 0 ? 0.5 * ald::lower_mass(p) * rng.uniform()
                                : ald::lower_mass(p) + (1.0 - ald::lower_mass(p)) * rng.uniform();
    const double q = ald::quantile(a, p);
    const double es = ald_lower_integral([](double x) { return x; }, p, q) / a;
    EXPECT_NEAR(ald::tail_expectation(a, p), es, 1e-8 * std::max(1.0, std::abs(es)));
  }
}

TEST(Ald, ShortfallBelowQuantile) {
  Rng rng(16);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_params(rng);
    const double a = 0.98 * rng.uniform() + 0.01;
    EXPECT_LT(ald::tail_expectation(a, p), ald::quantile(a, p));
  }
}

TEST(Ald, ShortfallClosedFormBelowLocation) {
  const AldParams p{0.2, 1.5, 0.8};
  const double a = 0.01;
  ASSERT_LT(a, ald::lower_mass(p));
  EXPECT_NEAR(ald::tail_expectation(a, p), ald::quantile(a, p) - p.sigma * p.p, 1e-12);
}

TEST(Ald, RejectsInvalidArguments) {
  EXPECT_THROW(ald::quantile(0.0, {}), DomainError);
  EXPECT_THROW(ald::quantile(1.0, {}), DomainError);
  EXPECT_THROW(ald::pdf(0.0, {0.0, -1.0, 1.0}), DomainError);
  EXPECT_THROW(ald::cdf(0.0, {0.0, 1.0, 0.0}), DomainError);
  EXPECT_THROW(ald::sample({}, 0, 1), InputError);
}

TEST(Ald, SamplesFollowTheDistribution) {
  const AldParams p{0.1, 0.7, 1.6};
  const auto x = ald::sample(p, 5000, 3);
  EXPECT_EQ(x, ald::sample(p, 5000, 3));
  const double d = stats::ks_statistic(x, [&](double v) { return ald::cdf(v, p); });
  EXPECT_GT(stats::ks_pvalue(d, x.size()), 0.01);
}

TEST(Ald, IidFitMatchesGridRefinedProfile) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto y = ald::sample({-0.2, 0.6, 1.5}, 1500, seed);
    const auto p = ald::fit_iid(y);
    const auto oracle = gasald::testing::ald_profile_mle(y);
    EXPECT_NEAR(p.mu, oracle.mu, 1e-6);
    EXPECT_NEAR(p.sigma, oracle.sigma, 1e-6);
    EXPECT_NEAR(p.p, oracle.p, 1e-6);
  }
  EXPECT_THROW(ald::fit_iid(std::vector<double>(10, 1.0)), DegenerateInputError);
}
