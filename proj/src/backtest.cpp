#include "gasald/backtest.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "gasald/error.hpp"
#include "gasald/random.hpp"
#include "gasald/stats.hpp"

namespace gasald::backtest {

namespace {

// k ln(q) with 0 ln 0 = 0.
double xlogy(double k, double q) { return k == 0.0 ? 0.0 : k * std::log(q); }

// Bernoulli log-likelihood of n0 zeros and n1 ones at rate q.
double bernoulli_ll(double n0, double n1, double q) { return xlogy(n0, 1.0 - q) + xlogy(n1, q); }

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InputError(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                     std::to_string(b) + ")");
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

std::size_t count_hits(std::span<const int> hits) {
  std::size_t n1 = 0;
  for (int h : hits) {
    if (h != 0 && h != 1) throw InputError("hit sequence must be binary");
    n1 += static_cast<std::size_t>(h);
  }
  return n1;
}

double uc_statistic(double n0, double n1, double alpha) {
  const double pi = n1 / (n0 + n1);
  return -2.0 * (bernoulli_ll(n0, n1, alpha) - bernoulli_ll(n0, n1, pi));
}

// t-statistic mean / (sd / sqrt(n)); a zero spread gives sign(mean) * inf.
double t_statistic(std::span<const double> x) {
  const double m = stats::mean(x);
  const double sd = stats::sample_sd(x);
  if (sd > 0.0) return m / (sd / std::sqrt(static_cast<double>(x.size())));
  if (m > 0.0) return std::numeric_limits<double>::infinity();
  if (m < 0.0) return -std::numeric_limits<double>::infinity();
  return 0.0;
}

}  // namespace

std::vector<int> violations(std::span<const double> realized, std::span<const double> var_seq) {
  check_lengths(realized.size(), var_seq.size(), "violations");
  std::vector<int> hits(realized.size());
  for (std::size_t t = 0; t < realized.size(); ++t) hits[t] = realized[t] < var_seq[t] ? 1 : 0;
  return hits;
}

TestReport uc_test(std::span<const int> hits, double alpha) {
  check_alpha(alpha);
  if (hits.empty()) throw InputError("uc_test needs at least one observation");
  const std::size_t n1 = count_hits(hits);
  const double lr = uc_statistic(static_cast<double>(hits.size() - n1), static_cast<double>(n1),
                                 alpha);
  return {lr, stats::chi2_upper_tail(lr, 1.0), hits.size(), n1};
}

TestReport cc_test(std::span<const int> hits, double alpha) {
  check_alpha(alpha);
  if (hits.size() < 2) throw InputError("cc_test needs at least two observations");
  const std::size_t n1 = count_hits(hits);
  const double lr_uc = uc_statistic(static_cast<double>(hits.size() - n1),
                                    static_cast<double>(n1), alpha);
  double n[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  for (std::size_t t = 1; t < hits.size(); ++t) n[hits[t - 1]][hits[t]] += 1.0;
  const double from0 = n[0][0] + n[0][1];
  const double from1 = n[1][0] + n[1][1];
  const double pi01 = from0 > 0.0 ? n[0][1] / from0 : 0.0;
  const double pi11 = from1 > 0.0 ? n[1][1] / from1 : 0.0;
  const double pi = (n[0][1] + n[1][1]) / (from0 + from1);
  const double ll_markov = bernoulli_ll(n[0][0], n[0][1], pi01) + bernoulli_ll(n[1][0], n[1][1], pi11);
  const double ll_indep = bernoulli_ll(n[0][0] + n[1][0], n[0][1] + n[1][1], pi);
  const double lr_ind = std::max(0.0, -2.0 * (ll_indep - ll_markov));
  const double lr = lr_uc + lr_ind;
  return {lr, stats::chi2_upper_tail(lr, 2.0), hits.size(), n1};
}

TestReport dq_test(std::span<const int> hits, std::span<const double> var_seq, double alpha,
                   std::size_t n_lags) {
  check_alpha(alpha);
  check_lengths(hits.size(), var_seq.size(), "dq_test");
  const std::size_t n = hits.size();
  if (n <= n_lags + 2) {
    throw InputError("dq_test needs more than " + std::to_string(n_lags + 2) + " observations");
  }
  const std::size_t n1 = count_hits(hits);
  const auto rows = static_cast<Eigen::Index>(n - n_lags);
  const auto cols = static_cast<Eigen::Index>(n_lags + 2);
  Eigen::MatrixXd x(rows, cols);
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::size_t t = static_cast<std::size_t>(r) + n_lags;
    y[r] = hits[t] - alpha;
    x(r, 0) = 1.0;
    for (std::size_t k = 1; k <= n_lags; ++k) {
      x(r, static_cast<Eigen::Index>(k)) = hits[t - k] - alpha;
    }
    x(r, cols - 1) = var_seq[t];
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < cols) throw DegenerateInputError("dq_test: singular regressor matrix");
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd fitted = x * beta;
  const double dq = fitted.squaredNorm() / (alpha * (1.0 - alpha));
  return {dq, stats::chi2_upper_tail(dq, static_cast<double>(cols)), n, n1};
}

TestReport es_bootstrap_test(std::span<const double> realized, std::span<const double> var_seq,
                             std::span<const double> es_seq, std::size_t n_boot,
                             std::uint64_t seed) {
  check_lengths(realized.size(), var_seq.size(), "es_bootstrap_test");
  check_lengths(realized.size(), es_seq.size(), "es_bootstrap_test");
  if (n_boot < 1) throw InputError("n_boot must be >= 1");
  std::vector<double> d;
  for (std::size_t t = 0; t < realized.size(); ++t) {
    if (realized[t] < var_seq[t]) d.push_back(realized[t] - es_seq[t]);
  }
  const std::size_t z = d.size();
  if (z < 2) throw InsufficientExceedancesError(z, 2);

  const double scale = stats::sample_sd(d);
  std::vector<double> e(d);
  if (scale > 0.0) {
    for (double& v : e) v /= scale;
  }
  const double delta0 = t_statistic(e);
  const double e_bar = stats::mean(e);
  std::vector<double> l(z);
  for (std::size_t i = 0; i < z; ++i) l[i] = e[i] - e_bar;

  std::size_t exceed = 0;
  std::vector<double> draw(z);
  for (std::size_t b = 0; b < n_boot; ++b) {
    Rng rng(seed, b);
    for (std::size_t i = 0; i < z; ++i) draw[i] = l[rng.index(z)];
    if (t_statistic(draw) > delta0) ++exceed;
  }
  return {delta0, static_cast<double>(exceed) / static_cast<double>(n_boot), realized.size(), z};
}

std::vector<double> quantile_loss(std::span<const double> realized,
                                  std::span<const double> var_seq, double alpha) {
  check_alpha(alpha);
  check_lengths(realized.size(), var_seq.size(), "quantile_loss");
  std::vector<double> out(realized.size());
  for (std::size_t t = 0; t < realized.size(); ++t) {
    const double hit = realized[t] < var_seq[t] ? 1.0 : 0.0;
    out[t] = (alpha - hit) * (realized[t] - var_seq[t]);
  }
  return out;
}

std::vector<double> fz_loss(std::span<const double> realized, std::span<const double> var_seq,
                            std::span<const double> es_seq, double alpha) {
  check_alpha(alpha);
  check_lengths(realized.size(), var_seq.size(), "fz_loss");
  check_lengths(realized.size(), es_seq.size(), "fz_loss");
  std::vector<double> out(realized.size());
  for (std::size_t t = 0; t < realized.size(); ++t) {
    const double es = es_seq[t];
    if (!(es < 0.0)) {
      throw DomainError("fz_loss: ES must be negative, got " + std::to_string(es) +
                        " at index " + std::to_string(t));
    }
    const double hit = realized[t] < var_seq[t] ? 1.0 : 0.0;
    out[t] = hit * (realized[t] - var_seq[t]) / (alpha * es) + var_seq[t] / es +
             std::log(-es) - 1.0;
  }
  return out;
}

double mean_quantile_loss(std::span<const double> realized, std::span<const double> var_seq,
                          double alpha) {
  return stats::mean(quantile_loss(realized, var_seq, alpha));
}

double mean_fz_loss(std::span<const double> realized, std::span<const double> var_seq,
                    std::span<const double> es_seq, double alpha) {
  return stats::mean(fz_loss(realized, var_seq, es_seq, alpha));
}

LossSummary loss_summary(std::span<const double> realized, std::span<const double> var_seq,
                         std::span<const double> es_seq, double alpha) {
  return {mean_quantile_loss(realized, var_seq, alpha),
          mean_fz_loss(realized, var_seq, es_seq, alpha), realized.size()};
}

TestReport jarque_bera(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 8) throw InputError("jarque_bera needs at least 8 observations");
  const double s = stats::skewness(series);
  const double k = stats::excess_kurtosis(series);
  const double jb = static_cast<double>(n) / 6.0 * (s * s + 0.25 * k * k);
  return {jb, stats::chi2_upper_tail(jb, 2.0), n, 0};
}

}  // namespace gasald::backtest
