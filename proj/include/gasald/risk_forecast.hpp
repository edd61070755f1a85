#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gasald/ald.hpp"
#include "gasald/error.hpp"
#include "gasald/estimation.hpp"
#include "gasald/gas_filter.hpp"

namespace gasald {

template <ScoreFamily F>
struct Forecast {
  // Position of the forecast target in the series.
  std::size_t time_index = 0;
  typename F::Params params_next;
  // Left-tail return levels; negative in the 1% tail.
  double var_alpha = 0.0;
  double es_alpha = 0.0;
  double alpha = 0.01;
};

using RiskForecast = Forecast<AldFamily>;

struct RollingConfig {
  std::size_t train_length = 1500;
  std::size_t refit_interval = 5;
  double alpha = 0.01;
  // Restarts used by refits after the first; warm starts make one enough.
  int refit_restarts = 1;
  // Simplex polish budget of refits after the first.
  long refit_polish_evaluations = 300;

  void validate() const {
    if (train_length < estimation::kMinObservations) {
      throw InputError("train_length must be >= " + std::to_string(estimation::kMinObservations));
    }
    if (refit_interval < 1) throw InputError("refit_interval must be >= 1");
    if (!(alpha > 0.0 && alpha < 0.5)) throw InputError("alpha must lie in (0, 0.5)");
    if (refit_restarts < 1) throw InputError("refit_restarts must be >= 1");
    if (refit_polish_evaluations < 0) throw InputError("refit_polish_evaluations must be >= 0");
  }
};

template <ScoreFamily F>
struct RollingRecord {
  Forecast<F> forecast;
  double realized = 0.0;
  // Index into RollingResult::fits of the coefficients in force.
  std::size_t fit_index = 0;
};

template <ScoreFamily F>
struct RefitRecord {
  // First series index not seen by the fit.
  std::size_t origin = 0;
  FitResult<F> result;
};

template <ScoreFamily F>
struct RollingResult {
  std::vector<RollingRecord<F>> records;
  std::vector<RefitRecord<F>> fits;
};

namespace risk {

template <ScoreFamily F>
Forecast<F> forecast_from_state(const FilterState<F>& next, std::size_t time_index, double alpha) {
  Forecast<F> f;
  f.time_index = time_index;
  f.params_next = next.params();
  f.alpha = alpha;
  f.var_alpha = F::quantile(alpha, f.params_next);
  f.es_alpha = F::tail_expectation(alpha, f.params_next);
  return f;
}

// Advances the state with last_y and forecasts the next observation.
template <ScoreFamily F>
Forecast<F> forecast_one(const FilterState<F>& state, double last_y,
                         const GasCoefficients<F>& coeffs, double alpha,
                         std::size_t time_index = 0) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (!std::isfinite(last_y)) throw InputError("last observation is not finite");
  const FilterState<F> next = gas::step(state, last_y, coeffs, time_index);
  return forecast_from_state(next, time_index, alpha);
}

// Expanding-window out-of-sample protocol: fit on the first train_length
// observations, forecast every later observation one step ahead and refit
// every refit_interval forecasts on all data before the forecast origin.
// The filter state runs on without reset across refits.
template <ScoreFamily F>
RollingResult<F> rolling_forecast(std::span<const double> series, const RollingConfig& config,
                                  const FitConfig& fit_config) {
  config.validate();
  fit_config.validate();
  gas::check_series<F>(series);
  const std::size_t n = series.size();
  const std::size_t train = config.train_length;
  if (n <= train) {
    throw InputError("series length " + std::to_string(n) + " must exceed train_length " +
                     std::to_string(train));
  }

  RollingResult<F> out;
  auto refit = [&](std::size_t origin, const FitConfig& cfg,
                   const std::optional<GasCoefficients<F>>& warm) {
    try {
      out.fits.push_back({origin, estimation::fit<F>(series.first(origin), cfg, warm)});
    } catch (const EstimationError& e) {
      throw EstimationError("refit at origin " + std::to_string(origin) + ": " + e.what());
    }
  };

  refit(train, fit_config, std::nullopt);
  FitConfig later = fit_config;
  later.n_restarts = config.refit_restarts;
  later.polish_evaluations = config.refit_polish_evaluations;

  // State at the last training observation under the first fit.
  const auto initial_path = gas::filter<F>(series.first(train), out.fits.back().result.coeffs);
  FilterState<F> state{initial_path.records.back().theta};

  out.records.reserve(n - train);
  for (std::size_t t = train; t < n; ++t) {
    const std::size_t offset = t - train;
    if (offset > 0 && offset % config.refit_interval == 0) {
      refit(t, later, out.fits.back().result.coeffs);
    }
    const auto& coeffs = out.fits.back().result.coeffs;
    state = gas::step(state, series[t - 1], coeffs, t - 1);
    RollingRecord<F> rec;
    rec.forecast = forecast_from_state(state, t, config.alpha);
    rec.realized = series[t];
    rec.fit_index = out.fits.size() - 1;
    out.records.push_back(rec);
  }
  return out;
}

// Conditional moments along a parameter path.
inline std::vector<MomentSet> moment_path(const AldPath& path) {
  std::vector<MomentSet> out;
  out.reserve(path.size());
  for (const auto& rec : path.records) out.push_back(ald::moments(rec.params()));
  return out;
}

}  // namespace risk
}  // namespace gasald
