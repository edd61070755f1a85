#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gasald/estimation.hpp"
#include "gasald/risk_forecast.hpp"

namespace gasald {

struct VarEs {
  // Position of the forecast target in the series.
  std::size_t time_index = 0;
  double var = 0.0;
  double es = 0.0;
};

namespace baselines {

inline constexpr std::size_t kHistoricalWindow = 25;

// Daily historical simulation: VaR_t is the interpolated alpha-quantile of
// the previous `window` returns and ES_t the mean of those at or below it.
// One record per t in [window, n).
std::vector<VarEs> historical_var_es(std::span<const double> series, std::size_t window,
                                     double alpha);

// Fixed-parameter ALD refitted on the rolling schedule; constant between
// refits.
RollingResult<AldFamily> static_ald_var_es(std::span<const double> series,
                                           const RollingConfig& config, FitConfig fit_config);

// Score recursion on (mu, ln sigma) of a normal, same rolling protocol.
RollingResult<NormalFamily> gas_normal_forecast(std::span<const double> series,
                                                const RollingConfig& config,
                                                const FitConfig& fit_config);

// Flattens rolling records into aligned (time, VaR, ES) triples.
template <ScoreFamily F>
std::vector<VarEs> to_var_es(const RollingResult<F>& result) {
  std::vector<VarEs> out;
  out.reserve(result.records.size());
  for (const auto& r : result.records) {
    out.push_back({r.forecast.time_index, r.forecast.var_alpha, r.forecast.es_alpha});
  }
  return out;
}

}  // namespace baselines
}  // namespace gasald
