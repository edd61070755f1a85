#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gasald/error.hpp"
#include "gasald/family.hpp"

namespace gasald {

// Static coefficients of the diagonal score recursion
//   theta_{t+1} = kappa + a * s_t + b * theta_t      (componentwise)
// in the family's link space.
template <ScoreFamily F>
struct GasCoefficients {
  using Vector = typename F::Vector;
  Vector kappa{};
  Vector a{};
  Vector b{};

  bool finite() const noexcept {
    for (std::size_t i = 0; i < F::kDim; ++i) {
      if (!std::isfinite(kappa[i]) || !std::isfinite(a[i]) || !std::isfinite(b[i])) return false;
    }
    return true;
  }
  bool stationary() const noexcept {
    for (double bi : b) {
      if (!(std::abs(bi) < 1.0)) return false;
    }
    return true;
  }

  // a = b = 0 with kappa at the given parameters: the static distribution.
  static GasCoefficients constant(const typename F::Params& params) {
    GasCoefficients c;
    c.kappa = F::link(params);
    return c;
  }

  bool operator==(const GasCoefficients&) const = default;
};

template <ScoreFamily F>
struct FilterState {
  typename F::Vector theta{};
  typename F::Params params() const { return F::unlink(theta); }
  bool operator==(const FilterState&) const = default;
};

template <ScoreFamily F>
struct PathRecord {
  typename F::Vector theta{};
  typename F::Vector score{};
  double loglik = 0.0;
  typename F::Params params() const { return F::unlink(theta); }
};

template <ScoreFamily F>
struct ParamPath {
  std::vector<PathRecord<F>> records;
  double total_loglik = 0.0;
  std::size_t size() const noexcept { return records.size(); }
};

using AldCoefficients = GasCoefficients<AldFamily>;
using AldState = FilterState<AldFamily>;
using AldPath = ParamPath<AldFamily>;

namespace gas {

// Any link coordinate beyond this magnitude is treated as divergence.
inline constexpr double kDivergenceBound = 50.0;

template <ScoreFamily F>
bool admissible(const typename F::Vector& theta) noexcept {
  for (double v : theta) {
    if (!(std::abs(v) <= kDivergenceBound)) return false;
  }
  return true;
}

// Link-space score of the log-density at y.
template <ScoreFamily F>
typename F::Vector score(double y, const typename F::Params& params) {
  params.validate();
  typename F::Vector s{};
  F::evaluate(y, F::link(params), s);
  return s;
}

inline AldFamily::Vector score(double y, const AldParams& params) {
  return score<AldFamily>(y, params);
}

template <ScoreFamily F>
FilterState<F> init_state(const GasCoefficients<F>& coeffs) {
  if (!coeffs.finite()) throw DomainError("non-finite GAS coefficients");
  if (!coeffs.stationary()) {
    throw NonstationaryError("stationary initialization needs |b_i| < 1 for every i");
  }
  FilterState<F> state;
  for (std::size_t i = 0; i < F::kDim; ++i) {
    state.theta[i] = coeffs.kappa[i] / (1.0 - coeffs.b[i]);
  }
  if (!admissible<F>(state.theta)) throw DivergenceError(0);
  return state;
}

namespace detail {

template <ScoreFamily F>
typename F::Vector update(const typename F::Vector& theta, const typename F::Vector& s,
                          const GasCoefficients<F>& coeffs) {
  typename F::Vector next{};
  for (std::size_t i = 0; i < F::kDim; ++i) {
    next[i] = coeffs.kappa[i] + coeffs.a[i] * s[i] + coeffs.b[i] * theta[i];
  }
  return next;
}

}  // namespace detail

// One recursion step; `time_index` labels a DivergenceError.
template <ScoreFamily F>
FilterState<F> step(const FilterState<F>& state, double y, const GasCoefficients<F>& coeffs,
                    std::size_t time_index = 0) {
  typename F::Vector s{};
  F::evaluate(y, state.theta, s);
  FilterState<F> next{detail::update(state.theta, s, coeffs)};
  if (!admissible<F>(next.theta)) throw DivergenceError(time_index + 1);
  return next;
}

template <ScoreFamily F>
void check_series(std::span<const double> series) {
  if (series.size() < 2) throw InputError("series needs at least two observations");
  for (std::size_t t = 0; t < series.size(); ++t) {
    if (!std::isfinite(series[t])) {
      throw InputError("non-finite observation at index " + std::to_string(t));
    }
  }
}

// Records ln f(y_t; theta_t) then advances the state, starting from the
// stationary initialization unless `initial` is given.
template <ScoreFamily F>
ParamPath<F> filter(std::span<const double> series, const GasCoefficients<F>& coeffs,
                    std::optional<FilterState<F>> initial = std::nullopt) {
  check_series<F>(series);
  FilterState<F> state = initial ? *initial : init_state(coeffs);
  if (!admissible<F>(state.theta)) throw DivergenceError(0);
  ParamPath<F> path;
  path.records.resize(series.size());
  for (std::size_t t = 0; t < series.size(); ++t) {
    auto& rec = path.records[t];
    rec.theta = state.theta;
    rec.loglik = F::evaluate(series[t], state.theta, rec.score);
    path.total_loglik += rec.loglik;
    if (t + 1 < series.size()) {
      state.theta = detail::update(state.theta, rec.score, coeffs);
      if (!admissible<F>(state.theta)) throw DivergenceError(t + 1);
    }
  }
  return path;
}

// Total log-likelihood without materializing the path; nullopt when the
// recursion diverges. Same accumulation order as filter().
template <ScoreFamily F>
std::optional<double> log_likelihood(std::span<const double> series,
                                     const GasCoefficients<F>& coeffs) {
  if (!coeffs.finite() || !coeffs.stationary()) return std::nullopt;
  typename F::Vector theta{};
  for (std::size_t i = 0; i < F::kDim; ++i) theta[i] = coeffs.kappa[i] / (1.0 - coeffs.b[i]);
  if (!admissible<F>(theta)) return std::nullopt;
  double total = 0.0;
  typename F::Vector s{};
  for (std::size_t t = 0; t < series.size(); ++t) {
    total += F::evaluate(series[t], theta, s);
    if (t + 1 < series.size()) {
      theta = detail::update(theta, s, coeffs);
      if (!admissible<F>(theta)) return std::nullopt;
    }
  }
  if (!std::isfinite(total)) return std::nullopt;
  return total;
}

// Probability integral transform u_t = F(y_t; theta_t).
template <ScoreFamily F>
std::vector<double> pit(std::span<const double> series, const ParamPath<F>& path) {
  if (series.size() != path.size()) {
    throw InputError("pit: series length " + std::to_string(series.size()) +
                     " differs from path length " + std::to_string(path.size()));
  }
  std::vector<double> u(series.size());
  for (std::size_t t = 0; t < series.size(); ++t) {
    u[t] = F::cdf(series[t], path.records[t].params());
  }
  return u;
}

}  // namespace gas
}  // namespace gasald
