#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gasald::stats {

double mean(std::span<const double> x);
// Unbiased (n - 1) sample variance.
double sample_variance(std::span<const double> x);
double sample_sd(std::span<const double> x);
double median(std::span<const double> x);

// Moment ratios from population (1/n) central moments: m3 / m2^1.5 and
// m4 / m2^2 - 3. A constant sequence raises DegenerateInputError.
double skewness(std::span<const double> x);
double excess_kurtosis(std::span<const double> x);

// Upper tail P(X > x) of a chi-square with df degrees of freedom.
double chi2_upper_tail(double x, double df);

double normal_pdf(double x);
double normal_cdf(double x);
double normal_quantile(double alpha);

// Empirical alpha-quantile by linear interpolation between order
// statistics, h = (n - 1) alpha (Hyndman-Fan type 7). `sorted` must be
// ascending and nonempty.
double interpolated_quantile(std::span<const double> sorted, double alpha);

// sup |F_n - F| for a continuous reference CDF.
double ks_statistic(std::span<const double> x, const std::function<double(double)>& cdf);
double ks_uniform_statistic(std::span<const double> u);

// Asymptotic Kolmogorov tail P(D_n > d) with Stephens' finite-n
// correction lambda = (sqrt(n) + 0.12 + 0.11 / sqrt(n)) d.
double ks_pvalue(double d, std::size_t n);

}  // namespace gasald::stats
