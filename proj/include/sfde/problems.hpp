#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sfde/operators.hpp"

namespace sfde {

using Coefficient1D = std::function<double(double)>;
using Coefficient2D = std::function<double(double, double)>;

struct ProblemSpec1D {
  std::string name;
  Interval domain;
  double horizon = 1.0;
  double alpha = 1.5;
  double theta = 0.5;
  Coefficient1D a;
  std::function<double(double, double)> f;  // (x, t)
  std::function<double(double)> phi;
  std::function<double(double, double)> exact;  // empty when unknown
};

struct ProblemSpec2D {
  std::string name;
  Interval domain1;
  Interval domain2;
  double horizon = 1.0;
  double alpha1 = 1.5;
  double alpha2 = 1.5;
  double theta = 0.5;
  Coefficient2D a;
  std::function<double(double, double, double)> f;  // (x1, x2, t)
  std::function<double(double, double)> phi;
  std::function<double(double, double, double)> exact;
};

// t^2 x^2 (1 - x)^2
double manufactured_u(double x, double t);
// Riemann-Liouville derivative of order alpha of x^2 (1 - x)^2, lower limit 0.
double rl_bracket(double x, double alpha);
std::function<double(double, double)> manufactured_f(Coefficient1D a, double alpha);

double manufactured_u_2d(double x1, double x2, double t);
std::function<double(double, double, double)> manufactured_f_2d(Coefficient2D a, double alpha1,
                                                                double alpha2);

const std::vector<std::string>& problem_names_1d();
const std::vector<std::string>& problem_names_2d();
bool is_problem_2d(const std::string& name);
Coefficient1D coefficient_1d(const std::string& name);
Coefficient2D coefficient_2d(const std::string& name);

ProblemSpec1D make_problem_1d(const std::string& name, double alpha, double theta);
ProblemSpec2D make_problem_2d(const std::string& name, double alpha1, double alpha2, double theta);

struct Discretization1D {
  Index n;
  Index m;
  double dx;
  double dt;
  double gamma;
};

struct Discretization2D {
  Index n1;
  Index n2;
  Index m;
  double dx1;
  double dx2;
  double dt;
  double gamma1;
  double gamma2;
};

Discretization1D discretize(const ProblemSpec1D& problem, Index n, Index m);
Discretization2D discretize(const ProblemSpec2D& problem, Index n1, Index n2, Index m);

AllAtOnceSystem build_system(const ProblemSpec1D& problem, Index n, Index m);
AllAtOnceSystem build_system(const ProblemSpec2D& problem, Index n1, Index n2, Index m);

Eigen::VectorXd assemble_rhs_1d(const ProblemSpec1D& problem, Index n, Index m);
Eigen::VectorXd assemble_rhs_2d(const ProblemSpec2D& problem, Index n1, Index n2, Index m);

// Time-major stacked blocks dt (theta f(t_m) + (1 - theta) f(t_{m-1})), m = 1..M,
// before the initial-data term, reshape and H_theta solve.
Eigen::VectorXd source_blocks_1d(const ProblemSpec1D& problem, Index n, Index m);
Eigen::VectorXd source_blocks_2d(const ProblemSpec2D& problem, Index n1, Index n2, Index m);

// Time-major blocks to the space-major all-at-once right-hand side.
Eigen::VectorXd finish_rhs(const Eigen::VectorXd& time_major, Index space_order,
                           const TimeOperators& time);

}  // namespace sfde
