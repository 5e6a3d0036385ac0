#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

namespace sfde {

using LinearOperator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct SolveReport {
  Eigen::Index iterations = 0;
  std::vector<double> relative_residuals;  // after each iteration
  bool converged = false;
  bool breakdown = false;
  double wall_time = 0.0;  // seconds

  double final_relative_residual() const {
    return relative_residuals.empty() ? 1.0 : relative_residuals.back();
  }
};

struct GmresOptions {
  double tol = 1e-8;
  Eigen::Index max_iters = 0;  // 0: the system dimension
  bool reorthogonalize = true;
};

struct GmresResult {
  Eigen::VectorXd solution;
  SolveReport report;
};

// Full GMRES from a zero guess, optionally left-preconditioned by
// precondition_inverse (an application of P^{-1}).
GmresResult gmres_solve(const LinearOperator& op, const LinearOperator& precondition_inverse,
                        const Eigen::VectorXd& b, const GmresOptions& options = {});

inline GmresResult gmres_solve(const LinearOperator& op, const Eigen::VectorXd& b,
                               const GmresOptions& options = {}) {
  return gmres_solve(op, LinearOperator{}, b, options);
}

}  // namespace sfde
