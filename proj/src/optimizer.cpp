#include "gasald/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace gasald::optim {

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kGradient:
      return "gradient";
    case StopReason::kNoProgress:
      return "no-progress";
    case StopReason::kLineSearch:
      return "line-search";
    case StopReason::kMaxIterations:
      return "max-iterations";
  }
  return "unknown";
}

Eigen::VectorXd central_gradient(const Objective& f, const Eigen::VectorXd& x, double rel_step) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = rel_step * (1.0 + std::abs(x[i]));
    xp[i] = x[i] + h;
    const double fp = f(xp);
    xp[i] = x[i] - h;
    const double fm = f(xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd central_hessian(const Objective& f, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& steps) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd h(n, n);
  const double f0 = f(x);
  Eigen::VectorXd xp = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double hi = steps[i];
    xp[i] = x[i] + hi;
    const double fp = f(xp);
    xp[i] = x[i] - hi;
    const double fm = f(xp);
    xp[i] = x[i];
    h(i, i) = (fp - 2.0 * f0 + fm) / (hi * hi);
    for (Eigen::Index j = 0; j < i; ++j) {
      const double hj = steps[j];
      auto eval = [&](double si, double sj) {
        xp[i] = x[i] + si * hi;
        xp[j] = x[j] + sj * hj;
        const double v = f(xp);
        xp[i] = x[i];
        xp[j] = x[j];
        return v;
      };
      const double v = (eval(1, 1) - eval(1, -1) - eval(-1, 1) + eval(-1, -1)) / (4.0 * hi * hj);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

BfgsResult minimize_bfgs(const Objective& f, const Eigen::VectorXd& x0,
                         const BfgsOptions& options) {
  const Eigen::Index n = x0.size();
  long evals = 0;
  auto value = [&](const Eigen::VectorXd& x) {
    ++evals;
    return f(x);
  };
  auto gradient = [&](const Eigen::VectorXd& x) {
    evals += 2 * n;
    return central_gradient(f, x, options.fd_relative_step);
  };

  BfgsResult res;
  Eigen::VectorXd x = x0;
  double fx = value(x);
  Eigen::VectorXd g = gradient(x);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  bool fresh = true;  // h is an unscaled identity
  int stalls = 0;
  constexpr double kArmijo = 1e-4;

  res.reason = StopReason::kMaxIterations;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (g.norm() <= options.gradient_tolerance) {
      res.reason = StopReason::kGradient;
      break;
    }
    Eigen::VectorXd d = -h * g;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      h.setIdentity();
      fresh = true;
      d = -g;
      slope = g.dot(d);
    }
    double t = std::min(1.0, options.max_step / d.norm());
    Eigen::VectorXd x_new;
    double f_new = fx;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls) {
      x_new = x + t * d;
      f_new = value(x_new);
      if (std::isfinite(f_new) && f_new <= fx + kArmijo * t * slope) {
        accepted = true;
        break;
      }
      // Safeguarded quadratic interpolation of the step.
      double t_q = -slope * t * t / (2.0 * (f_new - fx - slope * t));
      if (!std::isfinite(t_q)) t_q = 0.5 * t;
      t = std::clamp(t_q, 0.1 * t, 0.5 * t);
    }
    if (!accepted) {
      if (!fresh) {
        h.setIdentity();
        fresh = true;
        continue;
      }
      res.reason = StopReason::kLineSearch;
      break;
    }

    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd g_new = gradient(x_new);
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (fresh) {
        h *= sy / y.dot(y);
        fresh = false;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = h * y;
      h += -rho * (hy * s.transpose() + s * hy.transpose()) +
           (rho * rho * y.dot(hy) + rho) * (s * s.transpose());
    }

    const double improvement = fx - f_new;
    x = x_new;
    fx = f_new;
    g = g_new;
    if (improvement <= 1e-14 * (1.0 + std::abs(fx))) {
      if (++stalls >= 5) {
        res.reason = StopReason::kNoProgress;
        ++it;
        break;
      }
    } else {
      stalls = 0;
    }
  }
  res.x = x;
  res.value = fx;
  res.gradient = g;
  res.iterations = it;
  res.evaluations = evals;
  return res;
}

namespace {

SimplexResult nelder_mead_once(const Objective& f, const Eigen::VectorXd& x0, double step,
                               long budget) {
  const Eigen::Index n = x0.size();
  std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> vals(pts.size());
  long evals = 0;
  for (Eigen::Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)][i] += step;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    vals[i] = f(pts[i]);
    ++evals;
  }
  std::vector<std::size_t> order(pts.size());
  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    if (vals[worst] - vals[best] <= 1e-12 * (1.0 + std::abs(vals[best]))) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + (centroid - pts[worst]);
    const double f_r = f(reflected);
    ++evals;
    if (f_r < vals[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - pts[worst]);
      const double f_e = f(expanded);
      ++evals;
      if (f_e < f_r) {
        pts[worst] = expanded;
        vals[worst] = f_e;
      } else {
        pts[worst] = reflected;
        vals[worst] = f_r;
      }
      continue;
    }
    if (f_r < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = f_r;
      continue;
    }
    const bool outside = f_r < vals[worst];
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
    const double f_c = f(contracted);
    ++evals;
    if (f_c < std::min(f_r, vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = f_c;
      continue;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = f(pts[i]);
      ++evals;
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  const auto idx = static_cast<std::size_t>(it - vals.begin());
  return {pts[idx], vals[idx], evals};
}

}  // namespace

SimplexResult minimize_simplex(const Objective& f, const Eigen::VectorXd& x0, double step,
                               long max_evaluations) {
  SimplexResult best{x0, f(x0), 1};
  while (best.evaluations < max_evaluations) {
    auto r = nelder_mead_once(f, best.x, step, max_evaluations - best.evaluations);
    best.evaluations += r.evaluations;
    const bool improved = r.value < best.value - 1e-12 * (1.0 + std::abs(best.value));
    if (r.value < best.value) {
      best.x = std::move(r.x);
      best.value = r.value;
    }
    if (!improved) break;
  }
  return best;
}

}  // namespace gasald::optim
