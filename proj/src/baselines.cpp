#include "gasald/baselines.hpp"

#include <algorithm>
#include <string>

#include "gasald/error.hpp"
#include "gasald/stats.hpp"

namespace gasald::baselines {

std::vector<VarEs> historical_var_es(std::span<const double> series, std::size_t window,
                                     double alpha) {
  if (window < 2) throw InputError("historical window must be >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (series.size() <= window) {
    throw InputError("series length " + std::to_string(series.size()) +
                     " must exceed the historical window " + std::to_string(window));
  }
  std::vector<VarEs> out;
  out.reserve(series.size() - window);
  std::vector<double> sorted(window);
  for (std::size_t t = window; t < series.size(); ++t) {
    std::copy(series.begin() + static_cast<std::ptrdiff_t>(t - window),
              series.begin() + static_cast<std::ptrdiff_t>(t), sorted.begin());
    std::sort(sorted.begin(), sorted.end());
    const double var = stats::interpolated_quantile(sorted, alpha);
    double sum = 0.0;
    std::size_t count = 0;
    for (double v : sorted) {
      if (v > var) break;
      sum += v;
      ++count;
    }
    out.push_back({t, var, sum / static_cast<double>(count)});
  }
  return out;
}

RollingResult<AldFamily> static_ald_var_es(std::span<const double> series,
                                           const RollingConfig& config, FitConfig fit_config) {
  fit_config.restrict_static = true;
  return risk::rolling_forecast<AldFamily>(series, config, fit_config);
}

RollingResult<NormalFamily> gas_normal_forecast(std::span<const double> series,
                                                const RollingConfig& config,
                                                const FitConfig& fit_config) {
  FitConfig cfg = fit_config;
  cfg.restrict_static = false;
  return risk::rolling_forecast<NormalFamily>(series, config, cfg);
}

}  // namespace gasald::baselines
