#include "sfde/gmres.hpp"

#include <chrono>
#include <cmath>
#include <algorithm>
#include <stdexcept>

namespace sfde {

namespace {

constexpr double kBreakdown = 1e-15;

}  // namespace

GmresResult gmres_solve(const LinearOperator& op, const LinearOperator& precondition_inverse,
                        const Eigen::VectorXd& b, const GmresOptions& options) {
  if (!op) throw std::invalid_argument("GMRES needs an operator");
  if (!(options.tol > 0.0)) throw std::invalid_argument("GMRES tolerance must be positive");
  const auto start = std::chrono::steady_clock::now();
  const Eigen::Index n = b.size();
  const Eigen::Index max_iters = options.max_iters > 0 ? std::min(options.max_iters, n) : n;

  auto precondition = [&](Eigen::VectorXd v) {
    return precondition_inverse ? precondition_inverse(v) : v;
  };

  GmresResult result{Eigen::VectorXd::Zero(n), {}};
  SolveReport& report = result.report;
  const Eigen::VectorXd r0 = precondition(b);
  const double beta = r0.norm();
  if (!(beta > 0.0)) throw std::invalid_argument("GMRES right-hand side must be nonzero");

  std::vector<Eigen::VectorXd> v{r0 / beta};
  std::vector<Eigen::VectorXd> h;  // column k holds H(0..k+1, k)
  std::vector<double> cs, sn;
  std::vector<double> g{beta};

  Eigen::Index k = 0;
  while (k < max_iters) {
    Eigen::VectorXd w = precondition(op(v[k]));
    Eigen::VectorXd hk = Eigen::VectorXd::Zero(k + 2);
    const double w_norm0 = w.norm();
    for (Eigen::Index i = 0; i <= k; ++i) {
      hk[i] = v[i].dot(w);
      w -= hk[i] * v[i];
    }
    if (options.reorthogonalize && w.norm() < 0.5 * w_norm0) {
      for (Eigen::Index i = 0; i <= k; ++i) {
        const double c = v[i].dot(w);
        hk[i] += c;
        w -= c * v[i];
      }
    }
    const double h_next = w.norm();
    hk[k + 1] = h_next;

    for (Eigen::Index i = 0; i < k; ++i) {
      const double t = cs[i] * hk[i] + sn[i] * hk[i + 1];
      hk[i + 1] = -sn[i] * hk[i] + cs[i] * hk[i + 1];
      hk[i] = t;
    }
    const double rho = std::hypot(hk[k], hk[k + 1]);
    cs.push_back(hk[k] / rho);
    sn.push_back(hk[k + 1] / rho);
    hk[k] = rho;
    hk[k + 1] = 0.0;
    g.push_back(-sn[k] * g[k]);
    g[k] = cs[k] * g[k];
    h.push_back(std::move(hk));
    ++k;

    const double rel = std::abs(g[k]) / beta;
    report.relative_residuals.push_back(rel);
    if (rel <= options.tol) {
      report.converged = true;
      break;
    }
    if (h_next <= kBreakdown * std::max(1.0, w_norm0)) {
      report.breakdown = true;
      report.converged = true;
      break;
    }
    v.push_back(w / h_next);
  }

  Eigen::VectorXd y(k);
  for (Eigen::Index i = k - 1; i >= 0; --i) {
    double acc = g[i];
    for (Eigen::Index j = i + 1; j < k; ++j) acc -= h[j][i] * y[j];
    y[i] = acc / h[i][i];
  }
  for (Eigen::Index i = 0; i < k; ++i) result.solution += y[i] * v[i];
  report.iterations = k;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace sfde
