#pragma once

#include <vector>

#include <Eigen/Core>

#include "sfde/operators.hpp"
#include "sfde/symbols.hpp"

namespace sfde {

enum class CirculantKind { strang, first_column };

class SingularBlockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// c_k = g_{k+1} for 0 <= k < N/2, c_{N-1} = g_0, zero otherwise.
Eigen::VectorXd strang_column(double alpha, Index n);
// [g_1, .., g_{N-1}, g_0]
Eigen::VectorXd first_column_circulant(double alpha, Index n);
Eigen::VectorXd circulant_column(CirculantKind kind, double alpha, Index n);

// lambda_j = sum_k c_k e^{2 pi i j k / N}, so that C = F Lambda F^* with
// F_{st} = e^{-2 pi i s t / N} / sqrt(N).
Eigen::VectorXcd circulant_eigenvalues(const Eigen::VectorXd& column);
Eigen::MatrixXd dense_circulant(const Eigen::VectorXd& column);
// Unitary Fourier matrix F_{st} = e^{-2 pi i s t / N} / sqrt(N).
Eigen::MatrixXcd fourier_matrix(Index n);

double mean_coefficient(const DiagonalSampling& sampling);

// Solves (s_lambda I + Q) x = b through (s_lambda H_theta + H) x = H_theta b.
Eigen::VectorXcd block_solve(Complex s_lambda, double theta, Index m, const Eigen::VectorXcd& b);

class CirculantPreconditioner {
 public:
  struct Axis {
    Eigen::VectorXd column;
    double gamma;
  };

  // d (sum_k gamma_k C_k as a Kronecker sum) (x) I_M + I (x) Q
  CirculantPreconditioner(CirculantKind kind, std::vector<Axis> axes, double mean, double theta,
                          Index m);

  CirculantKind kind() const { return kind_; }
  int dimension() const { return static_cast<int>(axes_.size()); }
  Index extent(int axis) const { return axes_[axis].column.size(); }
  Index space_order() const { return multipliers_.size(); }
  Index steps() const { return time_.steps(); }
  Index order() const { return space_order() * steps(); }
  double theta() const { return time_.theta(); }
  double mean() const { return mean_; }
  // s lambda_j per space Fourier mode, lexicographic in 2D
  const Eigen::VectorXcd& multipliers() const { return multipliers_; }

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& v) const;
  Eigen::VectorXd apply_inverse(const Eigen::Ref<const Eigen::VectorXd>& v) const;
  Eigen::VectorXd apply_transpose(const Eigen::Ref<const Eigen::VectorXd>& v) const;
  Eigen::VectorXd apply_inverse_transpose(const Eigen::Ref<const Eigen::VectorXd>& v) const;

  // D_j = s lambda_j I_M + Q
  Eigen::MatrixXcd block(Index j) const;
  Eigen::MatrixXd dense(Index cap = kDefaultDenseCap) const;
  // U = F_n (x) I_M, F_n = F_{N1} (x) F_{N2} in 2D
  Eigen::MatrixXcd transform(Index cap = kDefaultDenseCap) const;

 private:
  enum class Mode { forward, inverse, forward_transpose, inverse_transpose };
  Eigen::VectorXd run(const Eigen::Ref<const Eigen::VectorXd>& v, Mode mode) const;
  void space_transform(Eigen::MatrixXcd& w, int sign) const;

  CirculantKind kind_;
  std::vector<Axis> axes_;
  double mean_;
  TimeOperators time_;
  Eigen::VectorXcd multipliers_;
};

CirculantPreconditioner build_preconditioner_1d(CirculantKind kind, double alpha, Index n, Index m,
                                                double theta, double gamma,
                                                const DiagonalSampling& a);
CirculantPreconditioner build_preconditioner_2d(CirculantKind kind, double alpha1, double alpha2,
                                                Index n1, Index n2, Index m, double theta,
                                                double gamma1, double gamma2,
                                                const DiagonalSampling& a);

inline Eigen::VectorXd apply_inverse(const CirculantPreconditioner& p, const Eigen::VectorXd& v) {
  return p.apply_inverse(v);
}

}  // namespace sfde
