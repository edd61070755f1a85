#pragma once

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "gasald/ald.hpp"

namespace gasald::testing {

// g(x) f(x), taken as zero where the density underflows.
inline double weighted(const std::function<double(double)>& g, const AldParams& p, double x) {
  const double f = ald::pdf(x, p);
  return f == 0.0 ? 0.0 : g(x) * f;
}

// Integral of g over (-inf, inf) against the ALD density, split at the
// kink so each half is smooth.
inline double ald_expectation(const std::function<double(double)>& g, const AldParams& p) {
  boost::math::quadrature::exp_sinh<double> q;
  const double upper = q.integrate([&](double u) { return weighted(g, p, p.mu + u); }, 0.0,
                                   std::numeric_limits<double>::infinity());
  const double lower = q.integrate([&](double u) { return weighted(g, p, p.mu - u); }, 0.0,
                                   std::numeric_limits<double>::infinity());
  return upper + lower;
}

// Integral of g against the density over (-inf, b].
inline double ald_lower_integral(const std::function<double(double)>& g, const AldParams& p,
                                 double b) {
  boost::math::quadrature::exp_sinh<double> q;
  if (b <= p.mu) {
    return q.integrate([&](double u) { return weighted(g, p, b - u); }, 0.0,
                       std::numeric_limits<double>::infinity());
  }
  boost::math::quadrature::exp_sinh<double> tail;
  const double below = tail.integrate(
      [&](double u) { return weighted(g, p, p.mu - u); }, 0.0,
      std::numeric_limits<double>::infinity());
  // Finite stretch [mu, b] by composite Gauss-Legendre on a smooth branch.
  static constexpr double kNodes[] = {-0.906179845938664, -0.538469310105683, 0.0,
                                      0.538469310105683, 0.906179845938664};
  static constexpr double kWeights[] = {0.236926885056189, 0.478628670499366, 0.568888888888889,
                                        0.478628670499366, 0.236926885056189};
  const int panels = 2000;
  const double h = (b - p.mu) / panels;
  double mid = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double c = p.mu + (i + 0.5) * h;
    for (int k = 0; k < 5; ++k) {
      const double x = c + 0.5 * h * kNodes[k];
      mid += 0.5 * h * kWeights[k] * g(x) * ald::pdf(x, p);
    }
  }
  return below + mid;
}

struct AldMle {
  double mu = 0.0;
  double sigma = 0.0;
  double p = 0.0;
  double loglik = -std::numeric_limits<double>::infinity();
};

// i.i.d. ALD log-likelihood maximized over scale and asymmetry at a fixed
// location, from sorted data and its prefix sums.
inline AldMle ald_profile_at(double mu, const std::vector<double>& sorted,
                             const std::vector<double>& prefix) {
  const std::size_t n = sorted.size();
  const auto k = static_cast<std::size_t>(
      std::lower_bound(sorted.begin(), sorted.end(), mu) - sorted.begin());
  const double below = mu * static_cast<double>(k) - prefix[k];
  const double above = (prefix[n] - prefix[k]) - mu * static_cast<double>(n - k);
  if (!(below > 0.0 && above > 0.0)) return {};
  const double p = std::pow(below / above, 0.25);
  const double sigma = (p * above + below / p) / static_cast<double>(n);
  return {mu, sigma, p,
          static_cast<double>(n) * (std::log(p / (1.0 + p * p)) - std::log(sigma) - 1.0)};
}

// Grid-refined i.i.d. ALD maximum likelihood: the location profile is
// scanned on a dense grid between the 2% and 98% sample quantiles, then
// the best cell is zoomed into repeatedly.
inline AldMle ald_profile_mle(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
  double lo = x[n / 50];
  double hi = x[n - 1 - n / 50];
  AldMle best;
  int points = 200000;
  for (int level = 0; level < 12; ++level) {
    const double step = (hi - lo) / points;
    for (int i = 0; i <= points; ++i) {
      const AldMle cand = ald_profile_at(lo + step * i, x, prefix);
      if (cand.loglik > best.loglik) best = cand;
    }
    lo = best.mu - 2.0 * step;
    hi = best.mu + 2.0 * step;
    points = 400;
  }
  return best;
}

}  // namespace gasald::testing
