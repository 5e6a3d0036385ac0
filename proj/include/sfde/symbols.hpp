#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace sfde {

using Complex = std::complex<double>;

struct SymbolPoint1D {
  double x = 0.0;
  double xi1 = 0.0;
  double xi3 = 0.0;
};

struct SymbolPoint2D {
  double x1 = 0.0;
  double x2 = 0.0;
  double xi1 = 0.0;
  double xi2 = 0.0;
  double xi3 = 0.0;
};

class SymbolPoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// e^{-i xi} (1 + e^{i (xi + pi)})^alpha, principal branch.
Complex f_alpha(double alpha, double xi);
// (1 - e^{i xi}) / (theta + (1 - theta) e^{i xi}).
Complex q_theta(double theta, double xi);

Complex spacetime_symbol_1d(double gamma_star, double a_value, double alpha, double theta,
                            const SymbolPoint1D& p);
Complex spacetime_symbol_2d(double gamma1_star, double gamma2_star, double a_value, double alpha1,
                            double alpha2, double theta, const SymbolPoint2D& p);
Complex precond_ratio_symbol_1d(double gamma_star, double a_value, double d_hat, double alpha,
                                double theta, const SymbolPoint1D& p);
Complex precond_ratio_symbol_2d(double gamma1_star, double gamma2_star, double a_value,
                                double d_hat, double alpha1, double alpha2, double theta,
                                const SymbolPoint2D& p);

enum class AxisKind { space, frequency };

struct GridAxis {
  AxisKind kind;
  Eigen::Index points;
};

// space: j / n, frequency: -pi + 2 pi j / n, j = 1..n.
double axis_node(const GridAxis& axis, Eigen::Index j);

struct SymbolCloud {
  Eigen::MatrixXd coordinates;  // one row per sample
  Eigen::VectorXcd values;
  Eigen::Index size() const { return values.size(); }
};

using SymbolFunction = std::function<Complex(std::span<const double>)>;

// Tensor sampling, first axis varying slowest.
SymbolCloud sample_symbol_cloud(const SymbolFunction& symbol, std::span<const GridAxis> axes);

}  // namespace sfde
