#include "gasald/family.hpp"

#include <cmath>

#include "gasald/error.hpp"
#include "gasald/stats.hpp"

namespace gasald {

AldParams AldFamily::unlink(const Vector& theta) {
  return {theta[0], std::exp(theta[1]), std::exp(theta[2])};
}

AldFamily::Vector AldFamily::link(const Params& params) {
  params.validate();
  return {params.mu, std::log(params.sigma), std::log(params.p)};
}

double AldFamily::evaluate(double y, const Vector& theta, Vector& score_out) {
  const double p = std::exp(theta[2]);
  const double inv_p = std::exp(-theta[2]);
  const double inv_sigma = std::exp(-theta[1]);
  const double p2 = p * p;
  const double d = (y - theta[0]) * inv_sigma;
  const double asym = (1.0 - p2) / (1.0 + p2);
  const double base = theta[2] - theta[1] - std::log1p(p2);
  // y == mu takes the upper branch.
  if (y >= theta[0]) {
    score_out = {p * inv_sigma, -1.0 + p * d, asym - p * d};
    return base - p * d;
  }
  score_out = {-inv_sigma * inv_p, -1.0 - d * inv_p, asym - d * inv_p};
  return base + d * inv_p;
}

AldParams AldFamily::static_start(std::span<const double> data) {
  const double med = stats::median(data);
  double mad = 0.0;
  for (double y : data) mad += std::abs(y - med);
  mad /= static_cast<double>(data.size());
  if (!(mad > 0.0)) throw DegenerateInputError("constant series has no scale");
  return {med, mad, 1.0};
}

NormalParams NormalFamily::unlink(const Vector& theta) {
  return {theta[0], std::exp(theta[1])};
}

NormalFamily::Vector NormalFamily::link(const Params& params) {
  params.validate();
  return {params.mu, std::log(params.sigma)};
}

double NormalFamily::evaluate(double y, const Vector& theta, Vector& score_out) {
  const double inv_sigma = std::exp(-theta[1]);
  const double z = (y - theta[0]) * inv_sigma;
  score_out = {z * inv_sigma, -1.0 + z * z};
  return -0.5 * z * z - theta[1] - 0.5 * std::log(2.0 * M_PI);
}

NormalParams NormalFamily::static_start(std::span<const double> data) {
  const double sd = stats::sample_sd(data);
  if (!(sd > 0.0)) throw DegenerateInputError("constant series has no scale");
  return {stats::mean(data), sd};
}

}  // namespace gasald
