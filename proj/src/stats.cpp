#include "gasald/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>

#include "gasald/error.hpp"

namespace gasald::stats {

double mean(std::span<const double> x) {
  if (x.empty()) throw InputError("mean of empty sequence");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 2) throw InputError("variance needs at least two values");
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

double sample_sd(std::span<const double> x) { return std::sqrt(sample_variance(x)); }

double median(std::span<const double> x) {
  if (x.empty()) throw InputError("median of empty sequence");
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

namespace {

struct CentralMoments {
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
};

CentralMoments central_moments(std::span<const double> x) {
  const double m = mean(x);
  CentralMoments c;
  for (double v : x) {
    const double d = v - m;
    const double d2 = d * d;
    c.m2 += d2;
    c.m3 += d2 * d;
    c.m4 += d2 * d2;
  }
  const auto n = static_cast<double>(x.size());
  c.m2 /= n;
  c.m3 /= n;
  c.m4 /= n;
  if (!(c.m2 > 0.0)) throw DegenerateInputError("constant sequence has no shape moments");
  return c;
}

}  // namespace

double skewness(std::span<const double> x) {
  const auto c = central_moments(x);
  return c.m3 / std::pow(c.m2, 1.5);
}

double excess_kurtosis(std::span<const double> x) {
  const auto c = central_moments(x);
  return c.m4 / (c.m2 * c.m2) - 3.0;
}

double chi2_upper_tail(double x, double df) {
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  const boost::math::chi_squared_distribution<double> dist(df);
  return boost::math::cdf(boost::math::complement(dist, x));
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("normal quantile outside (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), alpha);
}

double interpolated_quantile(std::span<const double> sorted, double alpha) {
  if (sorted.empty()) throw InputError("quantile of empty sequence");
  const double h = static_cast<double>(sorted.size() - 1) * alpha;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double ks_statistic(std::span<const double> x, const std::function<double(double)>& cdf) {
  std::vector<double> u(x.size());
  std::transform(x.begin(), x.end(), u.begin(), cdf);
  return ks_uniform_statistic(u);
}

double ks_uniform_statistic(std::span<const double> u) {
  if (u.empty()) throw InputError("KS statistic of empty sample");
  std::vector<double> sorted(u.begin(), u.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double di = static_cast<double>(i);
    d = std::max({d, (di + 1.0) / n - sorted[i], sorted[i] - di / n});
  }
  return d;
}

double ks_pvalue(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace gasald::stats
