#pragma once

#include <cstddef>
#include <cstdint>

#include "gasald/gas_filter.hpp"
#include "gasald/random.hpp"
#include "gasald/series.hpp"

namespace gasald {

template <ScoreFamily F>
struct SimulationSpec {
  GasCoefficients<F> coeffs;
  std::size_t length = 1;
  std::size_t burn_in = 500;
  std::uint64_t seed = 0;
};

template <ScoreFamily F>
struct SimulatedPath {
  ReturnSeries series;
  ParamPath<F> path;
  // State at the first retained observation; filtering `series` from it
  // reproduces `path`.
  FilterState<F> initial;
};

namespace simulate {

// Runs the recursion generatively: y_t is drawn from the conditional
// distribution at theta_t by inverse CDF (one uniform per step, in time
// order), then the state advances with the score of y_t.
template <ScoreFamily F>
SimulatedPath<F> simulate_path(const SimulationSpec<F>& spec) {
  if (spec.length < 1) throw InputError("simulation length must be >= 1");
  FilterState<F> state = gas::init_state(spec.coeffs);
  Rng rng(spec.seed);
  SimulatedPath<F> out;
  out.series.reserve(spec.length);
  out.path.records.reserve(spec.length);
  const std::size_t total = spec.burn_in + spec.length;
  for (std::size_t t = 0; t < total; ++t) {
    const double y = F::quantile(rng.uniform(), state.params());
    PathRecord<F> rec;
    rec.theta = state.theta;
    rec.loglik = F::evaluate(y, state.theta, rec.score);
    if (t >= spec.burn_in) {
      if (t == spec.burn_in) out.initial = state;
      out.series.push_back(y);
      out.path.total_loglik += rec.loglik;
      out.path.records.push_back(rec);
    }
    if (t + 1 < total) {
      state.theta = gas::detail::update(state.theta, rec.score, spec.coeffs);
      if (!gas::admissible<F>(state.theta)) throw DivergenceError(t + 1);
    }
  }
  return out;
}

}  // namespace simulate
}  // namespace gasald
