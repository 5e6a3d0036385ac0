#include "sfde/symbols.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sfde {

namespace {

constexpr double kPoleTolerance = 1e-14;

Complex unit(double xi) { return {std::cos(xi), std::sin(xi)}; }

}  // namespace

Complex f_alpha(double alpha, double xi) {
  // 1 + e^{i(xi + pi)} = 1 - e^{i xi}, with 1 - cos xi = 2 sin^2(xi / 2)
  const double s = std::sin(0.5 * xi);
  const Complex base(2.0 * s * s, -std::sin(xi));
  if (base == Complex(0.0, 0.0)) return {0.0, 0.0};
  return unit(-xi) * std::pow(base, alpha);
}

Complex q_theta(double theta, double xi) {
  const Complex z = unit(xi);
  const Complex den = theta + (1.0 - theta) * z;
  if (std::abs(den) < kPoleTolerance)
    throw SymbolPoleError("q_theta has a pole at theta = " + std::to_string(theta) +
                          ", xi = " + std::to_string(xi));
  const double s = std::sin(0.5 * xi);
  return Complex(2.0 * s * s, -std::sin(xi)) / den;
}

Complex spacetime_symbol_1d(double gamma_star, double a_value, double alpha, double theta,
                            const SymbolPoint1D& p) {
  if (!(gamma_star >= 0.0)) throw std::invalid_argument("gamma* must be nonnegative");
  return gamma_star * a_value * f_alpha(alpha, p.xi1) + q_theta(theta, p.xi3);
}

Complex spacetime_symbol_2d(double gamma1_star, double gamma2_star, double a_value, double alpha1,
                            double alpha2, double theta, const SymbolPoint2D& p) {
  if (!(gamma1_star >= 0.0) || !(gamma2_star >= 0.0))
    throw std::invalid_argument("gamma* must be nonnegative");
  return a_value * (gamma1_star * f_alpha(alpha1, p.xi1) + gamma2_star * f_alpha(alpha2, p.xi2)) +
         q_theta(theta, p.xi3);
}

namespace {

Complex checked_ratio(const Complex& num, const Complex& den) {
  if (std::abs(den) <= kPoleTolerance)
    throw SymbolPoleError("preconditioned symbol denominator vanishes");
  return num / den;
}

}  // namespace

Complex precond_ratio_symbol_1d(double gamma_star, double a_value, double d_hat, double alpha,
                                double theta, const SymbolPoint1D& p) {
  const Complex f = f_alpha(alpha, p.xi1);
  const Complex q = q_theta(theta, p.xi3);
  return checked_ratio(gamma_star * a_value * f + q, gamma_star * d_hat * f + q);
}

Complex precond_ratio_symbol_2d(double gamma1_star, double gamma2_star, double a_value,
                                double d_hat, double alpha1, double alpha2, double theta,
                                const SymbolPoint2D& p) {
  const Complex f = gamma1_star * f_alpha(alpha1, p.xi1) + gamma2_star * f_alpha(alpha2, p.xi2);
  const Complex q = q_theta(theta, p.xi3);
  return checked_ratio(a_value * f + q, d_hat * f + q);
}

double axis_node(const GridAxis& axis, Eigen::Index j) {
  const double r = static_cast<double>(j) / static_cast<double>(axis.points);
  return axis.kind == AxisKind::space ? r : -std::numbers::pi + 2.0 * std::numbers::pi * r;
}

SymbolCloud sample_symbol_cloud(const SymbolFunction& symbol, std::span<const GridAxis> axes) {
  Eigen::Index total = 1;
  for (const auto& axis : axes) {
    if (axis.points < 1) throw std::invalid_argument("grid sizes must be at least 1");
    total *= axis.points;
  }
  const auto dims = static_cast<Eigen::Index>(axes.size());
  SymbolCloud cloud{Eigen::MatrixXd(total, dims), Eigen::VectorXcd(total)};
  std::vector<double> point(axes.size());
  for (Eigen::Index s = 0; s < total; ++s) {
    Eigen::Index rest = s;
    for (Eigen::Index d = dims - 1; d >= 0; --d) {
      const Eigen::Index n = axes[d].points;
      point[d] = axis_node(axes[d], rest % n + 1);
      rest /= n;
    }
    for (Eigen::Index d = 0; d < dims; ++d) cloud.coordinates(s, d) = point[d];
    cloud.values[s] = symbol(point);
  }
  return cloud;
}

}  // namespace sfde
