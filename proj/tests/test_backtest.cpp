#include <gtest/gtest.h>

#include <cmath>

#include "gasald/ald.hpp"
#include "gasald/backtest.hpp"
#include "gasald/error.hpp"
#include "gasald/random.hpp"

using namespace gasald;

namespace {

std::vector<int> bernoulli(std::size_t n, double rate, Rng& rng) {
  std::vector<int> h(n);
  for (auto& v : h) v = rng.uniform() < rate ? 1 : 0;
  return h;
}

std::vector<int> with_hits(std::size_t n, std::size_t n1) {
  std::vector<int> h(n, 0);
  for (std::size_t i = 0; i < n1; ++i) h[i * (n / n1)] = 1;
  return h;
}

}  // namespace

TEST(Backtest, ViolationsAreStrict) {
  const std::vector<double> y = {-0.05, 0.01, -0.03};
  const std::vector<double> v = {-0.03, -0.03, -0.03};
  EXPECT_EQ(backtest::violations(y, v), (std::vector<int>{1, 0, 0}));
  EXPECT_THROW(backtest::violations(y, std::vector<double>{1.0}), InputError);
}

TEST(Backtest, KupiecAtNominalRate) {
  const auto r = backtest::uc_test(with_hits(1500, 15), 0.01);
  EXPECT_NEAR(r.statistic, 0.0, 1e-9);
  EXPECT_NEAR(r.p_value, 1.0, 1e-6);
  EXPECT_EQ(r.n_violations, 15u);
  EXPECT_EQ(r.n_obs, 1500u);
}

TEST(Backtest, KupiecWorkedValue) {
  const auto r = backtest::uc_test(with_hits(250, 5), 0.01);
  const double expect = -2.0 * (245 * std::log(0.99) + 5 * std::log(0.01) -
                                245 * std::log(0.98) - 5 * std::log(0.02));
  EXPECT_NEAR(r.statistic, expect, 1e-12);
  EXPECT_NEAR(r.statistic, 1.9568, 1e-4);
  EXPECT_NEAR(r.p_value, 0.162, 1e-3);
}

TEST(Backtest, KupiecWithoutViolations) {
  const auto r = backtest::uc_test(std::vector<int>(300, 0), 0.01);
  EXPECT_NEAR(r.statistic, -2.0 * 300 * std::log(0.99), 1e-12);
}

TEST(Backtest, ChristoffersenBoundaries) {
  const auto all = backtest::cc_test(std::vector<int>(100, 1), 0.01);
  EXPECT_TRUE(std::isfinite(all.statistic));
  EXPECT_LT(all.p_value, 1e-10);
  const std::vector<int> none(200, 0);
  const auto cc = backtest::cc_test(none, 0.01);
  EXPECT_NEAR(cc.statistic, backtest::uc_test(none, 0.01).statistic, 1e-12);
  EXPECT_THROW(backtest::cc_test(std::vector<int>{1}, 0.01), InputError);
}

TEST(Backtest, ChristoffersenDetectsClustering) {
  std::vector<int> h(1000, 0);
  for (std::size_t i = 400; i < 410; ++i) h[i] = 1;
  EXPECT_LT(backtest::cc_test(h, 0.01).p_value, 0.01);
}

TEST(Backtest, ChristoffersenSize) {
  Rng rng(31);
  int rejected = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    if (backtest::cc_test(bernoulli(1000, 0.05, rng), 0.05).p_value < 0.05) ++rejected;
  }
  EXPECT_GE(rejected, 30);
  EXPECT_LE(rejected, 80);
}

TEST(Backtest, DynamicQuantileSizeAndPower) {
  Rng rng(32);
  int rejected = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> var(1000);
    for (auto& v : var) v = -1.6 + 0.3 * rng.normal();
    if (backtest::dq_test(bernoulli(1000, 0.05, rng), var, 0.05).p_value < 0.05) ++rejected;
  }
  EXPECT_GE(rejected, 30);
  EXPECT_LE(rejected, 90);

  std::vector<int> block(1000, 0);
  std::vector<double> var(1000);
  for (auto& v : var) v = -1.6 + 0.3 * rng.normal();
  for (std::size_t i = 500; i < 550; ++i) block[i] = 1;
  const auto r = backtest::dq_test(block, var, 0.05);
  EXPECT_LT(r.p_value, 0.01);
  EXPECT_EQ(r.n_violations, 50u);
}

TEST(Backtest, DynamicQuantileErrors) {
  EXPECT_THROW(backtest::dq_test(std::vector<int>(6, 0), std::vector<double>(6, -1.0), 0.01),
               InputError);
  EXPECT_THROW(backtest::dq_test(std::vector<int>(100, 0), std::vector<double>(100, -1.0), 0.01),
               DegenerateInputError);
}

TEST(Backtest, ShortfallBootstrapNull) {
  // Residuals in exactly symmetric pairs: the observed t-statistic is zero.
  Rng rng(33);
  std::vector<double> y, var, es;
  for (int i = 0; i < 20; ++i) {
    const double eps = 1e-3 * rng.uniform();
    for (double s : {1.0, -1.0}) {
      var.push_back(-0.02);
      es.push_back(-0.05);
      y.push_back(-0.05 + s * eps);
    }
  }
  const auto r = backtest::es_bootstrap_test(y, var, es, 1000, 7);
  EXPECT_EQ(r.n_violations, 40u);
  EXPECT_GE(r.p_value, 0.3);
  EXPECT_LE(r.p_value, 0.7);
}

TEST(Backtest, ShortfallBootstrapAlternative) {
  Rng rng(34);
  std::vector<double> y, var, es;
  for (int i = 0; i < 15; ++i) {
    var.push_back(-0.02);
    es.push_back(-0.05);
    y.push_back(-0.05 + 0.02 + 0.005 * rng.normal());
  }
  EXPECT_LT(backtest::es_bootstrap_test(y, var, es, 1000, 7).p_value, 0.05);
  // Constant shift: no spread, infinitely significant.
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = es[i] + 0.02;
  EXPECT_LT(backtest::es_bootstrap_test(y, var, es, 1000, 7).p_value, 0.05);
}

TEST(Backtest, ShortfallBootstrapDeterministicAndGuarded) {
  const std::vector<double> y = {-0.06, 0.0, -0.04, -0.07, 0.01};
  const std::vector<double> var(5, -0.03);
  const std::vector<double> es(5, -0.05);
  const auto a = backtest::es_bootstrap_test(y, var, es, 500, 1);
  EXPECT_EQ(a.p_value, backtest::es_bootstrap_test(y, var, es, 500, 1).p_value);
  EXPECT_GE(a.p_value, 0.0);
  EXPECT_LE(a.p_value, 1.0);
  const std::vector<double> one = {-0.06, 0.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(backtest::es_bootstrap_test(one, var, es), InsufficientExceedancesError);
}

TEST(Backtest, QuantileLossWorkedValues) {
  EXPECT_NEAR(backtest::quantile_loss(std::vector<double>{-0.05}, std::vector<double>{-0.03}, 0.01)[0],
              0.0198, 1e-15);
  EXPECT_NEAR(backtest::quantile_loss(std::vector<double>{0.01}, std::vector<double>{-0.03}, 0.01)[0],
              0.0004, 1e-15);
  EXPECT_EQ(backtest::quantile_loss(std::vector<double>{-0.03}, std::vector<double>{-0.03}, 0.01)[0],
            0.0);
  Rng rng(2);
  std::vector<double> y(500), v(500);
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = rng.normal();
    v[i] = rng.normal();
  }
  for (double q : backtest::quantile_loss(y, v, 0.05)) EXPECT_GE(q, 0.0);
}

TEST(Backtest, JointLossWorkedValues) {
  const std::vector<double> var = {-0.03};
  const std::vector<double> es = {-0.04};
  EXPECT_NEAR(backtest::fz_loss(std::vector<double>{-0.05}, var, es, 0.01)[0], 46.531124, 1e-6);
  EXPECT_NEAR(backtest::fz_loss(std::vector<double>{0.01}, var, es, 0.01)[0], -3.468876, 1e-6);
  EXPECT_THROW(backtest::fz_loss(std::vector<double>{0.0, 0.0}, std::vector<double>{-1.0, -1.0},
                                 std::vector<double>{-1.0, 0.0}, 0.01),
               DomainError);
  try {
    backtest::fz_loss(std::vector<double>{0.0, 0.0}, std::vector<double>{-1.0, -1.0},
                      std::vector<double>{-1.0, 0.0}, 0.01);
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("index 1"), std::string::npos);
  }
}

TEST(Backtest, JointLossPrefersTruth) {
  const AldParams p{0.0, 1.0, 1.3};
  const double var = ald::quantile(0.025, p);
  const double es = ald::tail_expectation(0.025, p);
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto y = ald::sample(p, 2000, seed);
    const std::vector<double> v(y.size(), var), e(y.size(), es);
    const std::vector<double> v_hi(y.size(), 1.2 * var), e_hi(y.size(), 1.2 * es);
    const std::vector<double> v_lo(y.size(), 0.8 * var), e_lo(y.size(), 0.8 * es);
    const double truth = backtest::mean_fz_loss(y, v, e, 0.025);
    if (truth <= backtest::mean_fz_loss(y, v_hi, e_hi, 0.025) &&
        truth <= backtest::mean_fz_loss(y, v_lo, e_lo, 0.025)) {
      ++wins;
    }
  }
  EXPECT_GE(wins, 45);
}

TEST(Backtest, JarqueBera) {
  Rng rng(35);
  std::vector<double> x(20000);
  for (auto& v : x) v = rng.normal();
  EXPECT_GT(backtest::jarque_bera(x).p_value, 0.001);
  EXPECT_LT(backtest::jarque_bera(ald::sample({0.0, 1.0, 2.0}, 10000, 4)).p_value, 0.01);
  EXPECT_THROW(backtest::jarque_bera(std::vector<double>(7, 1.0)), InputError);
  EXPECT_THROW(backtest::jarque_bera(std::vector<double>(10, 1.0)), DegenerateInputError);
  // Direct evaluation from population moments.
  const std::vector<double> y = {1.0, 2.0, 3.0, 4.0, 10.0, -3.0, 0.5, 2.5};
  double m = 0.0;
  for (double v : y) m += v / 8.0;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : y) {
    m2 += std::pow(v - m, 2) / 8.0;
    m3 += std::pow(v - m, 3) / 8.0;
    m4 += std::pow(v - m, 4) / 8.0;
  }
  const double s = m3 / std::pow(m2, 1.5);
  const double k = m4 / (m2 * m2) - 3.0;
  EXPECT_NEAR(backtest::jarque_bera(y).statistic, 8.0 / 6.0 * (s * s + k * k / 4.0), 1e-12);
}
