#include "gasald/ald.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gasald/error.hpp"
#include "gasald/random.hpp"

namespace gasald {

bool AldParams::valid() const noexcept {
  return std::isfinite(mu) && std::isfinite(sigma) && sigma > 0.0 && std::isfinite(p) &&
         p > 0.0;
}

void AldParams::validate() const {
  if (!valid()) {
    throw DomainError("invalid ALD parameters (mu=" + std::to_string(mu) +
                      ", sigma=" + std::to_string(sigma) + ", p=" + std::to_string(p) + ")");
  }
}

namespace ald {
namespace {

void check_probability(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("probability must lie in (0, 1), got " + std::to_string(alpha));
  }
}

}  // namespace

double log_pdf(double x, const AldParams& params) {
  params.validate();
  const auto [mu, sigma, p] = params;
  const double base = std::log(p) - std::log(sigma) - std::log1p(p * p);
  if (x >= mu) {
    return base - p * (x - mu) / sigma;
  }
  return base + (x - mu) / (sigma * p);
}

double pdf(double x, const AldParams& params) { return std::exp(log_pdf(x, params)); }

double lower_mass(const AldParams& params) {
  const double p2 = params.p * params.p;
  return p2 / (1.0 + p2);
}

double cdf(double x, const AldParams& params) {
  params.validate();
  const auto [mu, sigma, p] = params;
  if (x < mu) {
    return lower_mass(params) * std::exp((x - mu) / (sigma * p));
  }
  return 1.0 - std::exp(-p * (x - mu) / sigma) / (1.0 + p * p);
}

double quantile(double alpha, const AldParams& params) {
  check_probability(alpha);
  params.validate();
  const auto [mu, sigma, p] = params;
  const double p2 = p * p;
  if (alpha <= lower_mass(params)) {
    return mu + sigma * p * std::log(alpha * (1.0 + p2) / p2);
  }
  return mu - (sigma / p) * std::log((1.0 - alpha) * (1.0 + p2));
}

double tail_expectation(double alpha, const AldParams& params) {
  const double q = quantile(alpha, params);
  const auto [mu, sigma, p] = params;
  const double w = lower_mass(params);
  if (alpha <= w) {
    // The lower branch is exponential below mu, so the conditional tail
    // is q minus an exponential with mean sigma * p.
    return q - sigma * p;
  }
  // Whole lower branch plus the slice [mu, q] of the upper branch.
  const double lower = w * (mu - sigma * p);
  const double upper = (alpha - w) * (mu + sigma / p) - (1.0 - alpha) * (q - mu);
  return (lower + upper) / alpha;
}

MomentSet moments(const AldParams& params) {
  params.validate();
  const auto [mu, sigma, p] = params;
  const double inv_p = 1.0 / p;
  const double s2 = inv_p * inv_p + p * p;
  MomentSet m;
  m.mean = mu + sigma * (inv_p - p);
  m.variance = sigma * sigma * s2;
  m.skewness = 2.0 * (inv_p * inv_p * inv_p - p * p * p) / std::pow(s2, 1.5);
  m.excess_kurtosis = 6.0 - 12.0 / (s2 * s2);
  return m;
}

AldParams fit_iid(std::span<const double> data) {
  std::vector<double> x(data.begin(), data.end());
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
  const double dn = static_cast<double>(n);
  AldParams best{};
  double best_ll = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double mu = x[k];
    const double below = mu * static_cast<double>(k) - prefix[k];
    const double above = (prefix[n] - prefix[k + 1]) - mu * static_cast<double>(n - k - 1);
    if (!(below > 0.0 && above > 0.0)) continue;
    const double p = std::pow(below / above, 0.25);
    const double sigma = (p * above + below / p) / dn;
    const double ll = dn * (std::log(p / (1.0 + p * p)) - std::log(sigma) - 1.0);
    if (ll > best_ll) {
      best_ll = ll;
      best = {mu, sigma, p};
    }
  }
  if (!std::isfinite(best_ll)) throw DegenerateInputError("fit_iid needs two distinct values");
  return best;
}

ReturnSeries sample(const AldParams& params, std::size_t n, std::uint64_t seed) {
  if (n == 0) {
    throw InputError("sample: requested zero draws");
  }
  params.validate();
  Rng rng(seed);
  ReturnSeries out(n);
  for (auto& y : out) {
    y = quantile(rng.uniform(), params);
  }
  return out;
}

}  // namespace ald
}  // namespace gasald
