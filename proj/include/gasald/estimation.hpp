#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gasald/error.hpp"
#include "gasald/gas_filter.hpp"
#include "gasald/optimizer.hpp"
#include "gasald/random.hpp"

namespace gasald {

struct FitConfig {
  int max_iterations = 500;
  // Bound on the Euclidean norm of the gradient of the per-observation
  // NLL in the optimizer's scaled coordinates. Unset: 5e-3 for static fits
  // and 2 for the dynamic recursion, where the difference quotient at the
  // coarse step measures likelihood jumps as much as slope and the check
  // only screens out runaway fits.
  std::optional<double> gradient_tolerance;
  int n_restarts = 3;
  std::uint64_t seed = 20240101;
  // Forces a = b = 0: the fixed-parameter distribution fit.
  bool restrict_static = false;
  // Relative central-difference step. Unset: 1e-6 for static fits, 1e-2
  // for the dynamic recursion, whose likelihood jumps wherever an
  // observation crosses the filtered location.
  std::optional<double> fd_step;
  // Nelder-Mead evaluations spent polishing the best BFGS solution.
  long polish_evaluations = 2000;

  double resolved_gradient_tolerance() const {
    if (gradient_tolerance) return *gradient_tolerance;
    return restrict_static ? 5e-3 : 2.0;
  }

  double resolved_fd_step() const {
    if (fd_step) return *fd_step;
    return restrict_static ? 1e-6 : 1e-2;
  }

  void validate() const {
    if (max_iterations < 1) throw InputError("max_iterations must be >= 1");
    if (!(resolved_gradient_tolerance() > 0.0)) throw InputError("gradient_tolerance must be > 0");
    if (n_restarts < 1) throw InputError("n_restarts must be >= 1");
    if (!(resolved_fd_step() > 0.0)) throw InputError("fd_step must be > 0");
    if (polish_evaluations < 0) throw InputError("polish_evaluations must be >= 0");
  }
};

template <ScoreFamily F>
struct FitResult {
  GasCoefficients<F> coeffs;
  double loglik = 0.0;
  bool converged = false;
  std::optional<std::vector<std::optional<double>>> std_errors;
  std::size_t n_obs = 0;
  bool restricted_static = false;
  double gradient_norm = 0.0;
  int iterations = 0;
  int best_restart = 0;
  std::string stop_reason;
  // Optimizer coordinates at the optimum; reused for standard errors.
  Eigen::VectorXd solution;
};

namespace estimation {

inline constexpr std::size_t kMinObservations = 100;
inline constexpr double kDivergencePenalty = 1e10;

// Raw coefficient vector layout: [kappa(K), a(K), c(K)] with b = tanh(c).
template <ScoreFamily F>
GasCoefficients<F> decode(std::span<const double> raw) {
  constexpr std::size_t k = F::kDim;
  if (raw.size() != 3 * k) throw InputError("raw coefficient vector has wrong length");
  GasCoefficients<F> c;
  for (std::size_t i = 0; i < k; ++i) {
    c.kappa[i] = raw[i];
    c.a[i] = raw[k + i];
    c.b[i] = std::tanh(raw[2 * k + i]);
  }
  return c;
}

template <ScoreFamily F>
std::vector<double> encode(const GasCoefficients<F>& coeffs) {
  constexpr std::size_t k = F::kDim;
  if (!coeffs.stationary()) throw NonstationaryError("cannot encode |b_i| >= 1");
  std::vector<double> raw(3 * k);
  for (std::size_t i = 0; i < k; ++i) {
    raw[i] = coeffs.kappa[i];
    raw[k + i] = coeffs.a[i];
    raw[2 * k + i] = std::atanh(coeffs.b[i]);
  }
  return raw;
}

// -log L(phi; y) for raw coefficients; divergence maps to
// 1e10 + |raw|^2 so the objective is finite everywhere.
template <ScoreFamily F>
double negative_log_likelihood(std::span<const double> raw, std::span<const double> series) {
  double norm2 = 0.0;
  bool finite = true;
  for (double v : raw) {
    norm2 += v * v;
    finite = finite && std::isfinite(v);
  }
  if (!finite) return std::numeric_limits<double>::max();
  const auto ll = gas::log_likelihood<F>(series, decode<F>(raw));
  if (!ll) return kDivergencePenalty + norm2;
  return -*ll;
}

namespace detail {

// Optimizer coordinates z relate to raw coefficients by raw = scale * z,
// where the location intercept carries the data scale s and the location
// loading s^2; everything else is unscaled.
template <ScoreFamily F>
struct Problem {
  std::span<const double> series;
  bool restrict_static = false;
  Eigen::VectorXd scale;

  Problem(std::span<const double> y, bool restricted) : series(y), restrict_static(restricted) {
    constexpr std::size_t k = F::kDim;
    const double s = F::scale(F::static_start(series));
    scale = Eigen::VectorXd::Ones(restricted ? k : 3 * k);
    scale[0] = s;
    if (!restricted) scale[k] = s * s;
  }

  std::vector<double> raw(const Eigen::VectorXd& z) const {
    std::vector<double> r(3 * F::kDim, 0.0);
    for (Eigen::Index i = 0; i < z.size(); ++i) r[i] = scale[i] * z[i];
    return r;
  }

  Eigen::VectorXd to_z(std::span<const double> raw_full) const {
    Eigen::VectorXd z(scale.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = raw_full[i] / scale[i];
    return z;
  }

  double nll(const Eigen::VectorXd& z) const {
    return negative_log_likelihood<F>(raw(z), series);
  }

  double mean_nll(const Eigen::VectorXd& z) const {
    return nll(z) / static_cast<double>(series.size());
  }

  // Static moment fit, a = 0.05 (scaled), b = 0.9, kappa placing the
  // stationary mean at the static fit.
  Eigen::VectorXd default_start() const {
    constexpr std::size_t k = F::kDim;
    const auto level = F::link(F::static_start(series));
    GasCoefficients<F> c;
    for (std::size_t i = 0; i < k; ++i) {
      if (restrict_static) {
        c.kappa[i] = level[i];
      } else {
        c.b[i] = 0.9;
        c.a[i] = i == 0 ? 0.05 * scale[k] : 0.05;
        c.kappa[i] = level[i] * (1.0 - c.b[i]);
      }
    }
    return to_z(encode<F>(c));
  }
};

}  // namespace detail

// Maximum-likelihood fit by multi-start BFGS. `warm_start` replaces the
// moment-based first start; later restarts jitter the first start.
template <ScoreFamily F>
FitResult<F> fit(std::span<const double> series, const FitConfig& config,
                 const std::optional<GasCoefficients<F>>& warm_start = std::nullopt) {
  config.validate();
  gas::check_series<F>(series);
  if (series.size() < kMinObservations) {
    throw InputError("fit needs at least " + std::to_string(kMinObservations) +
                     " observations, got " + std::to_string(series.size()));
  }
  const detail::Problem<F> problem(series, config.restrict_static);
  const optim::Objective objective = [&](const Eigen::VectorXd& z) {
    return problem.mean_nll(z);
  };

  Eigen::VectorXd start = problem.default_start();
  if (warm_start) {
    GasCoefficients<F> w = *warm_start;
    if (config.restrict_static) {
      w.a = {};
      w.b = {};
    }
    start = problem.to_z(encode<F>(w));
  }

  optim::BfgsOptions options;
  options.max_iterations = config.max_iterations;
  // The search itself always runs to a tight gradient; the loose dynamic
  // bound applies only to the reported convergence flag.
  options.gradient_tolerance = std::min(config.resolved_gradient_tolerance(), 5e-3);
  options.fd_relative_step = config.resolved_fd_step();

  // The i.i.d. likelihood is multimodal in the location, so restricted fits
  // of a family with a closed-form static MLE also start from it.
  std::optional<Eigen::VectorXd> exact_start;
  if constexpr (requires { F::static_mle(series); }) {
    if (config.restrict_static) {
      try {
        exact_start =
            problem.to_z(encode<F>(GasCoefficients<F>::constant(F::static_mle(series))));
      } catch (const DegenerateInputError&) {
      }
    }
  }
  const int n_starts = config.n_restarts + (exact_start ? 1 : 0);

  std::optional<optim::BfgsResult> best;
  int best_index = -1;
  for (int r = 0; r < n_starts; ++r) {
    Eigen::VectorXd z0 = start;
    if (r >= config.n_restarts) {
      z0 = *exact_start;
    } else if (r > 0) {
      Rng rng(config.seed, static_cast<std::uint64_t>(r));
      for (Eigen::Index i = 0; i < z0.size(); ++i) z0[i] += 0.2 * rng.normal();
    }
    auto res = optim::minimize_bfgs(objective, z0, options);
    if (!std::isfinite(res.value) ||
        res.value * static_cast<double>(series.size()) >= kDivergencePenalty) {
      continue;
    }
    if (!best || res.value < best->value) {
      best = std::move(res);
      best_index = r;
    }
  }
  if (!best) {
    throw EstimationError("all " + std::to_string(config.n_restarts) + " restarts diverged");
  }

  Eigen::VectorXd solution = best->x;
  double value = best->value;
  if (config.polish_evaluations > 0) {
    auto polished =
        optim::minimize_simplex(objective, solution, 0.05, config.polish_evaluations);
    solution = std::move(polished.x);
    value = polished.value;
  }
  const Eigen::VectorXd gradient =
      optim::central_gradient(objective, solution, options.fd_relative_step);

  FitResult<F> out;
  out.coeffs = decode<F>(problem.raw(solution));
  out.loglik = -value * static_cast<double>(series.size());
  out.gradient_norm = gradient.norm();
  out.converged =
      std::isfinite(out.loglik) && out.gradient_norm <= config.resolved_gradient_tolerance();
  out.n_obs = series.size();
  out.restricted_static = config.restrict_static;
  out.iterations = best->iterations;
  out.best_restart = best_index;
  out.stop_reason = optim::to_string(best->reason);
  out.solution = solution;
  return out;
}

// Converts a Hessian of the NLL in optimizer coordinates into standard
// errors of the decoded coefficients; `jacobian` holds d(decoded)/dz.
// Coordinates loading on a non-positive curvature direction are absent.
inline std::vector<std::optional<double>> standard_errors_from_hessian(
    const Eigen::MatrixXd& hessian, const Eigen::VectorXd& jacobian) {
  const Eigen::Index n = hessian.rows();
  std::vector<std::optional<double>> se(static_cast<std::size_t>(n));
  const Eigen::MatrixXd sym = 0.5 * (hessian + hessian.transpose());
  if (!sym.allFinite()) return se;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const Eigen::MatrixXd& v = eig.eigenvectors();
  const double floor = 1e-10 * std::max(1.0, lambda.cwiseAbs().maxCoeff());
  Eigen::VectorXd var = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd bad_loading = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (lambda[k] > floor) {
        var[i] += v(i, k) * v(i, k) / lambda[k];
      } else {
        bad_loading[i] += v(i, k) * v(i, k);
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (bad_loading[i] > 1e-6) continue;
    const double s = std::abs(jacobian[i]) * std::sqrt(var[i]);
    if (std::isfinite(s) && s > 0.0) se[static_cast<std::size_t>(i)] = s;
  }
  return se;
}

// Numeric-Hessian standard errors of (kappa, a, b) by the delta method.
// Entries not estimated (a, b of a static fit) are absent.
template <ScoreFamily F>
std::vector<std::optional<double>> std_errors(const FitResult<F>& result,
                                              std::span<const double> series) {
  if (!result.converged) throw StateError("standard errors need a converged fit");
  if (series.size() != result.n_obs) {
    throw InputError("series length does not match the fitted sample");
  }
  constexpr std::size_t k = F::kDim;
  const detail::Problem<F> problem(series, result.restricted_static);
  const Eigen::VectorXd& z = result.solution;
  const optim::Objective objective = [&](const Eigen::VectorXd& zz) { return problem.nll(zz); };
  // Steps on the scale of the sampling error, wide enough to average over
  // the density kink in the location direction.
  const Eigen::VectorXd steps =
      Eigen::VectorXd::Constant(z.size(), 1.0 / std::sqrt(static_cast<double>(series.size())));
  const Eigen::MatrixXd hessian = optim::central_hessian(objective, z, steps);
  Eigen::VectorXd jac = problem.scale;
  if (!result.restricted_static) {
    for (std::size_t i = 0; i < k; ++i) {
      const double b = std::tanh(z[static_cast<Eigen::Index>(2 * k + i)]);
      jac[static_cast<Eigen::Index>(2 * k + i)] *= 1.0 - b * b;
    }
  }
  auto se = standard_errors_from_hessian(hessian, jac);
  se.resize(3 * k);
  return se;
}

}  // namespace estimation
}  // namespace gasald
