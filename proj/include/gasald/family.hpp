#pragma once

#include <array>
#include <concepts>
#include <cstddef>
#include <span>
#include <string_view>

#include "gasald/ald.hpp"
#include "gasald/normal.hpp"

namespace gasald {

// A conditional distribution that the score recursion can drive. The
// recursion runs in link space, where every real vector maps to valid
// parameters; coordinate 0 is always the location.
template <class F>
concept ScoreFamily = requires(double y, double alpha, const typename F::Vector& theta,
                               const typename F::Params& params,
                               typename F::Vector& score_out,
                               std::span<const double> data) {
  { F::kDim } -> std::convertible_to<std::size_t>;
  { F::kName } -> std::convertible_to<std::string_view>;
  { F::unlink(theta) } -> std::same_as<typename F::Params>;
  { F::link(params) } -> std::same_as<typename F::Vector>;
  // Log-density at y with the link-space score written to score_out.
  { F::evaluate(y, theta, score_out) } -> std::same_as<double>;
  { F::cdf(y, params) } -> std::same_as<double>;
  { F::quantile(alpha, params) } -> std::same_as<double>;
  { F::tail_expectation(alpha, params) } -> std::same_as<double>;
  { F::static_start(data) } -> std::same_as<typename F::Params>;
  { F::scale(params) } -> std::same_as<double>;
};

// Link space (mu, ln sigma, ln p).
struct AldFamily {
  static constexpr std::size_t kDim = 3;
  static constexpr std::string_view kName = "gas-ald";
  using Params = AldParams;
  using Vector = std::array<double, kDim>;

  static Params unlink(const Vector& theta);
  static Vector link(const Params& params);
  static double evaluate(double y, const Vector& theta, Vector& score_out);
  static double cdf(double y, const Params& params) { return ald::cdf(y, params); }
  static double quantile(double alpha, const Params& params) {
    return ald::quantile(alpha, params);
  }
  static double tail_expectation(double alpha, const Params& params) {
    return ald::tail_expectation(alpha, params);
  }
  // Median, p = 1 and mean absolute deviation about the median.
  static Params static_start(std::span<const double> data);
  // Closed-form i.i.d. maximum likelihood.
  static Params static_mle(std::span<const double> data) { return ald::fit_iid(data); }
  static double scale(const Params& params) { return params.sigma; }
};

// Link space (mu, ln sigma).
struct NormalFamily {
  static constexpr std::size_t kDim = 2;
  static constexpr std::string_view kName = "gas-normal";
  using Params = NormalParams;
  using Vector = std::array<double, kDim>;

  static Params unlink(const Vector& theta);
  static Vector link(const Params& params);
  static double evaluate(double y, const Vector& theta, Vector& score_out);
  static double cdf(double y, const Params& params) { return normal::cdf(y, params); }
  static double quantile(double alpha, const Params& params) {
    return normal::quantile(alpha, params);
  }
  static double tail_expectation(double alpha, const Params& params) {
    return normal::tail_expectation(alpha, params);
  }
  static Params static_start(std::span<const double> data);
  static double scale(const Params& params) { return params.sigma; }
};

static_assert(ScoreFamily<AldFamily>);
static_assert(ScoreFamily<NormalFamily>);

}  // namespace gasald
