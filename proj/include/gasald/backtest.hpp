#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gasald {

struct TestReport {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n_obs = 0;
  std::size_t n_violations = 0;
};

struct LossSummary {
  double mean_ql = 0.0;
  double mean_fzl = 0.0;
  std::size_t n_obs = 0;
};

namespace backtest {

inline constexpr std::size_t kDqLags = 4;
inline constexpr std::size_t kBootstrapDraws = 1000;

// I_t = 1 iff y_t < VaR_t.
std::vector<int> violations(std::span<const double> realized, std::span<const double> var_seq);

// Kupiec proportion-of-failures likelihood ratio, chi-square(1).
TestReport uc_test(std::span<const int> hits, double alpha);

// Christoffersen conditional coverage: LR_uc + LR_ind, chi-square(2).
TestReport cc_test(std::span<const int> hits, double alpha);

// Engle-Manganelli dynamic quantile test with regressors
// [1, Hit_{t-1..t-n_lags}, VaR_t], chi-square(n_lags + 2).
TestReport dq_test(std::span<const int> hits, std::span<const double> var_seq, double alpha,
                   std::size_t n_lags = kDqLags);

// One-sided bootstrap t-test of E[(x_t - ES_t)/s] = 0 against > 0 over the
// violation days.
TestReport es_bootstrap_test(std::span<const double> realized, std::span<const double> var_seq,
                             std::span<const double> es_seq,
                             std::size_t n_boot = kBootstrapDraws, std::uint64_t seed = 0);

std::vector<double> quantile_loss(std::span<const double> realized,
                                  std::span<const double> var_seq, double alpha);

// Fissler-Ziegel joint loss; needs ES_t < 0 for every t.
std::vector<double> fz_loss(std::span<const double> realized, std::span<const double> var_seq,
                            std::span<const double> es_seq, double alpha);

double mean_quantile_loss(std::span<const double> realized, std::span<const double> var_seq,
                          double alpha);
double mean_fz_loss(std::span<const double> realized, std::span<const double> var_seq,
                    std::span<const double> es_seq, double alpha);

LossSummary loss_summary(std::span<const double> realized, std::span<const double> var_seq,
                         std::span<const double> es_seq, double alpha);

TestReport jarque_bera(std::span<const double> series);

}  // namespace backtest
}  // namespace gasald
