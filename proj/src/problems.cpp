#include "sfde/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace sfde {

double manufactured_u(double x, double t) {
  const double b = x * (1.0 - x);
  return t * t * b * b;
}

double rl_bracket(double x, double alpha) {
  return 2.0 / std::tgamma(3.0 - alpha) * std::pow(x, 2.0 - alpha) -
         12.0 / std::tgamma(4.0 - alpha) * std::pow(x, 3.0 - alpha) +
         24.0 / std::tgamma(5.0 - alpha) * std::pow(x, 4.0 - alpha);
}

std::function<double(double, double)> manufactured_f(Coefficient1D a, double alpha) {
  return [a = std::move(a), alpha](double x, double t) {
    const double b = x * (1.0 - x);
    return 2.0 * t * b * b - a(x) * t * t * rl_bracket(x, alpha);
  };
}

double manufactured_u_2d(double x1, double x2, double t) {
  const double b1 = x1 * (1.0 - x1), b2 = x2 * (1.0 - x2);
  return t * t * b1 * b1 * b2 * b2;
}

std::function<double(double, double, double)> manufactured_f_2d(Coefficient2D a, double alpha1,
                                                                double alpha2) {
  return [a = std::move(a), alpha1, alpha2](double x1, double x2, double t) {
    const double p1 = x1 * x1 * (1.0 - x1) * (1.0 - x1);
    const double p2 = x2 * x2 * (1.0 - x2) * (1.0 - x2);
    return 2.0 * t * p1 * p2 -
           a(x1, x2) * t * t * (rl_bracket(x1, alpha1) * p2 + p1 * rl_bracket(x2, alpha2));
  };
}

const std::vector<std::string>& problem_names_1d() {
  static const std::vector<std::string> names{"const1", "xsq_plus1", "xsq"};
  return names;
}

const std::vector<std::string>& problem_names_2d() {
  static const std::vector<std::string> names{"const1_2d", "radial_plus1_2d", "radial_2d"};
  return names;
}

bool is_problem_2d(const std::string& name) {
  for (const auto& n : problem_names_2d())
    if (n == name) return true;
  return false;
}

Coefficient1D coefficient_1d(const std::string& name) {
  if (name == "const1") return [](double) { return 1.0; };
  if (name == "xsq_plus1") return [](double x) { return x * x + 1.0; };
  if (name == "xsq") return [](double x) { return x * x; };
  throw std::invalid_argument("unknown 1D problem '" + name +
                              "' (expected const1, xsq_plus1 or xsq)");
}

Coefficient2D coefficient_2d(const std::string& name) {
  if (name == "const1_2d") return [](double, double) { return 1.0; };
  if (name == "radial_plus1_2d") return [](double x1, double x2) { return x1 * x1 + x2 * x2 + 1.0; };
  if (name == "radial_2d") return [](double x1, double x2) { return x1 * x1 + x2 * x2; };
  throw std::invalid_argument("unknown 2D problem '" + name +
                              "' (expected const1_2d, radial_plus1_2d or radial_2d)");
}

ProblemSpec1D make_problem_1d(const std::string& name, double alpha, double theta) {
  ProblemSpec1D p;
  p.name = name;
  p.alpha = FractionalOrder(alpha).value();
  p.theta = theta;
  p.a = coefficient_1d(name);
  p.f = manufactured_f(p.a, alpha);
  p.phi = [](double) { return 0.0; };
  p.exact = manufactured_u;
  return p;
}

ProblemSpec2D make_problem_2d(const std::string& name, double alpha1, double alpha2,
                              double theta) {
  ProblemSpec2D p;
  p.name = name;
  p.alpha1 = FractionalOrder(alpha1).value();
  p.alpha2 = FractionalOrder(alpha2).value();
  p.theta = theta;
  p.a = coefficient_2d(name);
  p.f = manufactured_f_2d(p.a, alpha1, alpha2);
  p.phi = [](double, double) { return 0.0; };
  p.exact = manufactured_u_2d;
  return p;
}

Discretization1D discretize(const ProblemSpec1D& problem, Index n, Index m) {
  if (n < 2 || m < 2) throw std::invalid_argument("N and M must be at least 2");
  const double dx = problem.domain.length() / static_cast<double>(n + 1);
  const double dt = problem.horizon / static_cast<double>(m);
  return {n, m, dx, dt, gamma_ratio(dt, dx, problem.alpha)};
}

Discretization2D discretize(const ProblemSpec2D& problem, Index n1, Index n2, Index m) {
  if (n1 < 2 || n2 < 2 || m < 2) throw std::invalid_argument("N1, N2 and M must be at least 2");
  const double dx1 = problem.domain1.length() / static_cast<double>(n1 + 1);
  const double dx2 = problem.domain2.length() / static_cast<double>(n2 + 1);
  const double dt = problem.horizon / static_cast<double>(m);
  return {n1, n2, m, dx1, dx2, dt, gamma_ratio(dt, dx1, problem.alpha1),
          gamma_ratio(dt, dx2, problem.alpha2)};
}

AllAtOnceSystem build_system(const ProblemSpec1D& problem, Index n, Index m) {
  const auto d = discretize(problem, n, m);
  return AllAtOnceSystem(
      build_space_1d(problem.alpha, n, sample_1d(problem.a, n, problem.domain), d.gamma),
      TimeOperators(problem.theta, m));
}

AllAtOnceSystem build_system(const ProblemSpec2D& problem, Index n1, Index n2, Index m) {
  const auto d = discretize(problem, n1, n2, m);
  return AllAtOnceSystem(
      build_space_2d(problem.alpha1, problem.alpha2, n1, n2, d.gamma1, d.gamma2,
                     sample_2d(problem.a, n1, n2, problem.domain1, problem.domain2)),
      TimeOperators(problem.theta, m));
}

Eigen::VectorXd source_blocks_1d(const ProblemSpec1D& problem, Index n, Index m) {
  const auto d = discretize(problem, n, m);
  const double theta = problem.theta;
  Eigen::VectorXd fbar(n * m);
  for (Index k = 1; k <= m; ++k) {
    const double t1 = static_cast<double>(k) * d.dt, t0 = static_cast<double>(k - 1) * d.dt;
    for (Index i = 0; i < n; ++i) {
      const double x = problem.domain.lo + static_cast<double>(i + 1) * d.dx;
      fbar[(k - 1) * n + i] = d.dt * (theta * problem.f(x, t1) + (1.0 - theta) * problem.f(x, t0));
    }
  }
  return fbar;
}

Eigen::VectorXd source_blocks_2d(const ProblemSpec2D& problem, Index n1, Index n2, Index m) {
  const auto d = discretize(problem, n1, n2, m);
  const double theta = problem.theta;
  const Index n = n1 * n2;
  Eigen::VectorXd fbar(n * m);
  for (Index k = 1; k <= m; ++k) {
    const double t1 = static_cast<double>(k) * d.dt, t0 = static_cast<double>(k - 1) * d.dt;
    for (Index i1 = 0; i1 < n1; ++i1) {
      const double x1 = problem.domain1.lo + static_cast<double>(i1 + 1) * d.dx1;
      for (Index i2 = 0; i2 < n2; ++i2) {
        const double x2 = problem.domain2.lo + static_cast<double>(i2 + 1) * d.dx2;
        fbar[(k - 1) * n + i1 * n2 + i2] =
            d.dt * (theta * problem.f(x1, x2, t1) + (1.0 - theta) * problem.f(x1, x2, t0));
      }
    }
  }
  return fbar;
}

Eigen::VectorXd finish_rhs(const Eigen::VectorXd& time_major, Index space_order,
                           const TimeOperators& time) {
  const Index m = time.steps();
  if (time_major.size() != space_order * m)
    throw std::invalid_argument("right-hand side blocks have the wrong length");
  // time-major (t * n + s) to space-major (s * M + t)
  Eigen::VectorXd f(space_order * m);
  Eigen::VectorXd row(m);
  for (Index s = 0; s < space_order; ++s) {
    for (Index t = 0; t < m; ++t) row[t] = time_major[t * space_order + s];
    time.solve_h_theta(row);
    f.segment(s * m, m) = row;
  }
  return f;
}

Eigen::VectorXd assemble_rhs_1d(const ProblemSpec1D& problem, Index n, Index m) {
  const auto d = discretize(problem, n, m);
  const AllAtOnceSystem system = build_system(problem, n, m);
  Eigen::VectorXd fbar = source_blocks_1d(problem, n, m);
  Eigen::VectorXd u0(n);
  for (Index i = 0; i < n; ++i)
    u0[i] = problem.phi(problem.domain.lo + static_cast<double>(i + 1) * d.dx);
  fbar.head(n) += u0 + (1.0 - problem.theta) * system.space().apply(u0);
  return finish_rhs(fbar, n, system.time());
}

Eigen::VectorXd assemble_rhs_2d(const ProblemSpec2D& problem, Index n1, Index n2, Index m) {
  const auto d = discretize(problem, n1, n2, m);
  const AllAtOnceSystem system = build_system(problem, n1, n2, m);
  const Index n = n1 * n2;
  Eigen::VectorXd fbar = source_blocks_2d(problem, n1, n2, m);
  Eigen::VectorXd u0(n);
  for (Index i1 = 0; i1 < n1; ++i1)
    for (Index i2 = 0; i2 < n2; ++i2)
      u0[i1 * n2 + i2] = problem.phi(problem.domain1.lo + static_cast<double>(i1 + 1) * d.dx1,
                                     problem.domain2.lo + static_cast<double>(i2 + 1) * d.dx2);
  fbar.head(n) += u0 + (1.0 - problem.theta) * system.space().apply(u0);
  return finish_rhs(fbar, n, system.time());
}

}  // namespace sfde
