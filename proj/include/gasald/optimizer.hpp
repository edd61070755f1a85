#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace gasald::optim {

using Objective = std::function<double(const Eigen::VectorXd&)>;

// Central differences with step rel_step * (1 + |x_i|).
Eigen::VectorXd central_gradient(const Objective& f, const Eigen::VectorXd& x,
                                 double rel_step = 1e-6);

// Symmetric finite-difference Hessian with per-coordinate steps.
Eigen::MatrixXd central_hessian(const Objective& f, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& steps);

struct BfgsOptions {
  int max_iterations = 500;
  double gradient_tolerance = 1e-6;
  double fd_relative_step = 1e-6;
  // Upper bound on the length of a trial step.
  double max_step = 1.0;
};

enum class StopReason { kGradient, kNoProgress, kLineSearch, kMaxIterations };

std::string to_string(StopReason reason);

struct BfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  Eigen::VectorXd gradient;
  int iterations = 0;
  long evaluations = 0;
  StopReason reason = StopReason::kMaxIterations;
};

// Quasi-Newton minimization with an inverse-Hessian BFGS update, Armijo
// backtracking and numerical gradients.
BfgsResult minimize_bfgs(const Objective& f, const Eigen::VectorXd& x0,
                         const BfgsOptions& options = {});

struct SimplexResult {
  Eigen::VectorXd x;
  double value = 0.0;
  long evaluations = 0;
};

// Nelder-Mead with an axis-aligned initial simplex of edge `step`,
// restarted from the incumbent until a restart stops improving or the
// evaluation budget runs out. Never returns a point worse than x0.
SimplexResult minimize_simplex(const Objective& f, const Eigen::VectorXd& x0, double step,
                               long max_evaluations);

}  // namespace gasald::optim
