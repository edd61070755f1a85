#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "gasald/series.hpp"

namespace gasald {

// Asymmetric Laplace distribution with density
//
//   f(x) = p / (sigma (1 + p^2)) * exp(-p (x - mu) / sigma)      x >= mu
//          p / (sigma (1 + p^2)) * exp((x - mu) / (sigma p))     x <  mu
//
// p < 1 fattens the right tail, p > 1 the left tail.
struct AldParams {
  double mu = 0.0;
  double sigma = 1.0;
  double p = 1.0;

  bool valid() const noexcept;
  // Throws DomainError unless valid().
  void validate() const;
};

struct MomentSet {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

namespace ald {

double log_pdf(double x, const AldParams& params);
double pdf(double x, const AldParams& params);
double cdf(double x, const AldParams& params);

// Probability mass below mu, p^2 / (1 + p^2).
double lower_mass(const AldParams& params);

double quantile(double alpha, const AldParams& params);

// (1/alpha) * integral of z dF(z) up to quantile(alpha): the expected
// shortfall of the lower tail.
double tail_expectation(double alpha, const AldParams& params);

MomentSet moments(const AldParams& params);

// Exact i.i.d. maximum likelihood. For fixed mu the scale and asymmetry
// have closed forms and the profile likelihood peaks at a sample point, so
// every sample point is tried. Needs at least two distinct values.
AldParams fit_iid(std::span<const double> data);

// n i.i.d. draws by inverse CDF on a seeded uniform stream.
ReturnSeries sample(const AldParams& params, std::size_t n, std::uint64_t seed);

}  // namespace ald
}  // namespace gasald
