#include "gasald/normal.hpp"

#include <cmath>
#include <string>

#include "gasald/error.hpp"
#include "gasald/stats.hpp"

namespace gasald {

bool NormalParams::valid() const noexcept {
  return std::isfinite(mu) && std::isfinite(sigma) && sigma > 0.0;
}

void NormalParams::validate() const {
  if (!valid()) {
    throw DomainError("invalid normal parameters (mu=" + std::to_string(mu) +
                      ", sigma=" + std::to_string(sigma) + ")");
  }
}

namespace normal {

double log_pdf(double x, const NormalParams& params) {
  params.validate();
  const double z = (x - params.mu) / params.sigma;
  return -0.5 * z * z - std::log(params.sigma) - 0.5 * std::log(2.0 * M_PI);
}

double cdf(double x, const NormalParams& params) {
  params.validate();
  return stats::normal_cdf((x - params.mu) / params.sigma);
}

double quantile(double alpha, const NormalParams& params) {
  params.validate();
  return params.mu + params.sigma * stats::normal_quantile(alpha);
}

double tail_expectation(double alpha, const NormalParams& params) {
  params.validate();
  const double z = stats::normal_quantile(alpha);
  return params.mu - params.sigma * stats::normal_pdf(z) / alpha;
}

}  // namespace normal
}  // namespace gasald
