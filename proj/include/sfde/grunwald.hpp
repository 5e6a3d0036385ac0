#pragma once

#include <Eigen/Core>

namespace sfde {

using Index = Eigen::Index;

// Fractional order in the open interval (1, 2).
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha);
  double value() const noexcept { return alpha_; }
  operator double() const noexcept { return alpha_; }

 private:
  double alpha_;
};

// Shifted Grünwald weights g_0..g_{K}.
struct GrunwaldTable {
  FractionalOrder alpha;
  Eigen::VectorXd coeffs;

  Index size() const noexcept { return coeffs.size(); }
  double operator[](Index k) const { return coeffs[k]; }
};

// g_0 = 1, g_{k+1} = (1 - (alpha + 1) / (k + 1)) g_k.
GrunwaldTable coefficients(FractionalOrder alpha, Index count);

// (-1)^k C(alpha, k) through a Gamma-function ratio in extended precision.
double coefficient_closed_form(FractionalOrder alpha, Index k);

double absolute_sum(const GrunwaldTable& table);

}  // namespace sfde
