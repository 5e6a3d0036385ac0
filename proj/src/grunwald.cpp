#include "sfde/grunwald.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sfde {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::invalid_argument("fractional order must lie in (1,2), got " + std::to_string(alpha));
}

GrunwaldTable coefficients(FractionalOrder alpha, Index count) {
  if (count < 2) throw std::invalid_argument("coefficient count must be at least 2");
  Eigen::VectorXd g(count);
  g[0] = 1.0;
  for (Index k = 0; k + 1 < count; ++k)
    g[k + 1] = (1.0 - (alpha.value() + 1.0) / static_cast<double>(k + 1)) * g[k];
  return {alpha, std::move(g)};
}

double coefficient_closed_form(FractionalOrder alpha, Index k) {
  if (k < 0) throw std::invalid_argument("coefficient index must be nonnegative");
  // (-1)^k C(a,k) = Gamma(k - a) / (Gamma(-a) k!)
  const long double a = alpha.value();
  if (k == 0) return 1.0;
  if (k == 1) return static_cast<double>(-a);
  // Gamma(-a) > 0 for a in (1,2); Gamma(k - a) > 0 for k >= 2.
  const long double log_mag = std::lgamma(static_cast<long double>(k) - a) -
                              std::lgamma(static_cast<long double>(k) + 1.0L) -
                              std::lgamma(-a);
  return static_cast<double>(std::exp(log_mag));
}

double absolute_sum(const GrunwaldTable& table) {
  if (table.size() < 2) throw std::invalid_argument("table must hold at least two coefficients");
  return table.coeffs.cwiseAbs().sum();
}

}  // namespace sfde
