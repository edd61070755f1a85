#pragma once

namespace gasald {

struct NormalParams {
  double mu = 0.0;
  double sigma = 1.0;

  bool valid() const noexcept;
  void validate() const;
};

namespace normal {

double log_pdf(double x, const NormalParams& params);
double cdf(double x, const NormalParams& params);
double quantile(double alpha, const NormalParams& params);
// mu - sigma * phi(z_alpha) / alpha
double tail_expectation(double alpha, const NormalParams& params);

}  // namespace normal
}  // namespace gasald
